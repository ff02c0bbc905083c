#include "valshare/dsl.hpp"

#include <fstream>
#include <sstream>

#include "valshare/error.hpp"
#include "valshare/format.hpp"

namespace valshare::dsl {

namespace {

std::string component(const json& j, const char* what) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return std::to_string(j.get<long long>());
  if (j.is_number_unsigned()) return std::to_string(j.get<unsigned long long>());
  if (j.is_number_float()) return format_double(j.get<double>());
  throw Error(ErrorKind::InvalidArgument, std::string(what) + " must be a string or number");
}

}  // namespace

Scalar scalar_from_json(const json& j) {
  try {
    if (j.is_object()) {
      std::string re = j.contains("re") ? component(j.at("re"), "re") : "0";
      std::string im = j.contains("im") ? component(j.at("im"), "im") : "0";
      return Scalar::parse(re, im);
    }
    return Scalar::parse(component(j, "value"));
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    throw Error(ErrorKind::InvalidArgument, std::string("bad scalar: ") + e.what());
  }
}

json scalar_to_json(const Scalar& s) { return json{{"re", s.re_string()}, {"im", s.im_string()}}; }

json complex_to_json(Complex z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

ExpSum expsum_from_json(const json& j) {
  if (!j.is_object() || j.value("kind", "") != "expsum" || !j.contains("terms") || !j.at("terms").is_array())
    throw Error(ErrorKind::InvalidArgument, "function JSON needs \"kind\": \"expsum\" and a \"terms\" array");
  std::vector<Term> terms;
  for (const auto& t : j.at("terms")) {
    if (!t.is_object() || !t.contains("coeff") || !t.contains("freq"))
      throw Error(ErrorKind::InvalidArgument, "each term needs \"coeff\" and \"freq\"");
    terms.push_back({scalar_from_json(t.at("coeff")), scalar_from_json(t.at("freq"))});
  }
  return ExpSum::normalize(std::move(terms));
}

json expsum_to_json(const ExpSum& f) {
  json terms = json::array();
  for (const auto& t : f.terms()) terms.push_back({{"coeff", scalar_to_json(t.coeff)}, {"freq", scalar_to_json(t.freq)}});
  return json{{"kind", "expsum"}, {"terms", terms}};
}

Region region_from_json(const json& j) {
  Region r;
  try {
    if (j.is_array()) {
      if (j.size() != 4) throw Error(ErrorKind::InvalidArgument, "region array needs 4 numbers");
      r = {j[0].get<double>(), j[1].get<double>(), j[2].get<double>(), j[3].get<double>()};
    } else if (j.is_object()) {
      r = {j.at("re_min").get<double>(), j.at("re_max").get<double>(), j.at("im_min").get<double>(),
           j.at("im_max").get<double>()};
    } else {
      throw Error(ErrorKind::InvalidArgument, "region must be an object or a 4-element array");
    }
  } catch (const json::exception& e) {
    throw Error(ErrorKind::InvalidArgument, std::string("bad region: ") + e.what());
  }
  r.validate();
  return r;
}

json region_to_json(const Region& r) {
  return json{{"re_min", r.re_min}, {"re_max", r.re_max}, {"im_min", r.im_min}, {"im_max", r.im_max}};
}

std::vector<Scalar> values_from_json(const json& j) {
  std::vector<Scalar> out;
  if (j.is_array()) {
    for (const auto& v : j) out.push_back(scalar_from_json(v));
  } else {
    out.push_back(scalar_from_json(j));
  }
  return out;
}

json load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::InvalidArgument, path + ": " + e.what());
  }
}

json load_inline_or_file(const std::string& text) {
  auto pos = text.find_first_not_of(" \t\n");
  if (pos != std::string::npos && (text[pos] == '[' || text[pos] == '{')) {
    try {
      return json::parse(text);
    } catch (const json::parse_error& e) {
      throw Error(ErrorKind::InvalidArgument, std::string("inline JSON: ") + e.what());
    }
  }
  return load_file(text);
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::Io, "cannot write " + path);
  out << content;
  if (!out) throw Error(ErrorKind::Io, "write failed for " + path);
}

}  // namespace valshare::dsl
