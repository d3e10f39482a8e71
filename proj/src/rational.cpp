#include "cantor/rational.hpp"

namespace cantor {

std::string int_str(const Int& v) { return v.str(); }

Int parse_int(const std::string& s) {
  try {
    if (s.empty()) raise(ErrorCode::BadArgument, "empty integer literal");
    return Int(s);
  } catch (const std::runtime_error&) {
    raise(ErrorCode::BadArgument, "bad integer literal: " + s);
  }
}

std::string rat_str(const Rat& r) {
  if (den(r) == 1) return num(r).str();
  return num(r).str() + "/" + den(r).str();
}

Rat parse_rat(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) return Rat(parse_int(s));
  Int p = parse_int(s.substr(0, slash));
  Int q = parse_int(s.substr(slash + 1));
  if (q == 0) raise(ErrorCode::BadArgument, "zero denominator: " + s);
  return Rat(p, q);
}

}  // namespace cantor
