#pragma once

// Run reports: one structured record per invocation, emitted either as a
// single JSON object with stable key order or as readable text with the same
// content.  Certified numerics always carry an explicit radius.

#include <hmf/real.hpp>

#include <json.hpp>

#include <ostream>
#include <string>
#include <vector>

namespace hmf {

using Json = nlohmann::ordered_json;

struct RunReport {
  std::string command;
  Json results = Json::object();
  std::vector<std::string> warnings;
  int status = 0;
};

inline Json json_cert(const CertReal& x, long digits = 30) {
  Json j = Json::object();
  j["value"] = x.v.str(digits);
  j["radius"] = x.rad;
  return j;
}

inline Json json_cert(const CertComplex& z, long digits = 30) {
  Json j = Json::object();
  j["re"] = z.re.v.str(digits);
  j["im"] = z.im.v.str(digits);
  j["radius"] = z.re.rad + z.im.rad;
  return j;
}

namespace detail {

inline void emit_text_value(std::ostream& os, const Json& v, int indent);

inline void emit_text_object(std::ostream& os, const Json& o, int indent) {
  std::string pad(indent, ' ');
  for (auto it = o.begin(); it != o.end(); ++it) {
    os << pad << it.key() << ":";
    if (it->is_object() || (it->is_array() && !it->empty() &&
                            (it->front().is_object() || it->front().is_array()))) {
      os << '\n';
      emit_text_value(os, *it, indent + 2);
    } else {
      os << ' ';
      emit_text_value(os, *it, 0);
      os << '\n';
    }
  }
}

inline void emit_text_value(std::ostream& os, const Json& v, int indent) {
  if (v.is_object()) {
    emit_text_object(os, v, indent);
  } else if (v.is_array()) {
    if (indent == 0) {
      bool first = true;
      for (auto& e : v) {
        if (!first) os << ' ';
        first = false;
        emit_text_value(os, e, 0);
      }
    } else {
      std::string pad(indent, ' ');
      for (auto& e : v) {
        os << pad << "-\n";
        emit_text_value(os, e, indent + 2);
      }
    }
  } else if (v.is_string()) {
    os << v.get<std::string>();
  } else {
    os << v.dump();
  }
}

}  // namespace detail

inline void emit_report(const RunReport& rep, const std::string& format,
                        std::ostream& os) {
  if (format == "structured") {
    Json j = Json::object();
    j["command"] = rep.command;
    j["results"] = rep.results;
    j["warnings"] = rep.warnings;
    j["status"] = rep.status;
    os << j.dump(2) << '\n';
    return;
  }
  os << "command: " << rep.command << '\n';
  detail::emit_text_object(os, rep.results, 0);
  for (auto& w : rep.warnings) os << "warning: " << w << '\n';
  os << "status: " << rep.status << '\n';
}

}  // namespace hmf
