#include "json_io.hpp"

#include <cmath>
#include <cstdio>

namespace ermat {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

void dump_rec(const nlohmann::ordered_json& j, std::string& out) {
  using value_t = nlohmann::ordered_json::value_t;
  switch (j.type()) {
    case value_t::object: {
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ',';
        first = false;
        out += nlohmann::ordered_json(it.key()).dump();
        out += ':';
        dump_rec(it.value(), out);
      }
      out += '}';
      break;
    }
    case value_t::array: {
      out += '[';
      bool first = true;
      for (const auto& v : j) {
        if (!first) out += ',';
        first = false;
        dump_rec(v, out);
      }
      out += ']';
      break;
    }
    case value_t::number_float: {
      const double v = j.get<double>();
      if (!std::isfinite(v)) {
        out += "null";
      } else {
        out += format_double(v);
      }
      break;
    }
    default:
      out += j.dump();
      break;
  }
}

}  // namespace

std::string dump_json(const nlohmann::ordered_json& j) {
  std::string out;
  dump_rec(j, out);
  return out;
}

}  // namespace ermat
