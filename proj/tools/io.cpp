#include "io.hpp"

#include "tw/errors.hpp"

#include <atomic>
#include <charconv>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

namespace twcli {

using tw::ValidationError;

std::string fmt(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

json to_json(tw::cplx z) { return json::array({z.real(), z.imag()}); }

json to_json(const tw::Coeff2 &c) {
  return {{"theta", to_json(c.theta)}, {"phi", to_json(c.phi)}};
}

json to_json(const tw::TangentialState &w) {
  return {{"h_theta", to_json(w.h_theta)},
          {"h_phi", to_json(w.h_phi)},
          {"e_theta", to_json(w.e_theta)},
          {"e_phi", to_json(w.e_phi)}};
}

void require_keys(const json &obj, std::initializer_list<std::string_view> allowed,
                  std::string_view where) {
  if (!obj.is_object())
    throw ValidationError(std::string(where) + " must be a JSON object");
  for (const auto &[key, _] : obj.items()) {
    bool ok = false;
    for (auto a : allowed)
      ok = ok || key == a;
    if (!ok)
      throw ValidationError("unknown key '" + key + "' in " + std::string(where));
  }
}

const json &required(const json &obj, std::string_view key, std::string_view where) {
  const auto it = obj.find(std::string(key));
  if (it == obj.end())
    throw ValidationError(std::string(where) + " is missing '" + std::string(key) + "'");
  return *it;
}

double get_double(const json &v, std::string_view what) {
  if (!v.is_number())
    throw ValidationError(std::string(what) + " must be a number");
  return v.get<double>();
}

int get_int(const json &v, std::string_view what) {
  if (!v.is_number_integer())
    throw ValidationError(std::string(what) + " must be an integer");
  return v.get<int>();
}

tw::cplx get_complex(const json &v, std::string_view what) {
  if (v.is_number())
    return v.get<double>();
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
    return {v[0].get<double>(), v[1].get<double>()};
  throw ValidationError(std::string(what) + " must be [re, im] or a number");
}

tw::Coeff2 get_coeff2(const json &v, std::string_view what) {
  require_keys(v, {"theta", "phi"}, what);
  tw::Coeff2 c;
  if (v.contains("theta"))
    c.theta = get_complex(v["theta"], std::string(what) + ".theta");
  if (v.contains("phi"))
    c.phi = get_complex(v["phi"], std::string(what) + ".phi");
  return c;
}

tw::TangentialState get_state(const json &v, std::string_view what) {
  require_keys(v, {"h_theta", "h_phi", "e_theta", "e_phi"}, what);
  const std::string w(what);
  tw::TangentialState s;
  if (v.contains("h_theta"))
    s.h_theta = get_complex(v["h_theta"], w + ".h_theta");
  if (v.contains("h_phi"))
    s.h_phi = get_complex(v["h_phi"], w + ".h_phi");
  if (v.contains("e_theta"))
    s.e_theta = get_complex(v["e_theta"], w + ".e_theta");
  if (v.contains("e_phi"))
    s.e_phi = get_complex(v["e_phi"], w + ".e_phi");
  return s;
}

tw::Medium get_medium(const json &v, std::string_view what) {
  require_keys(v, {"eps", "mu"}, what);
  const std::string w(what);
  const tw::cplx eps = v.contains("eps") ? get_complex(v["eps"], w + ".eps") : 1.0;
  const tw::cplx mu = v.contains("mu") ? get_complex(v["mu"], w + ".mu") : 1.0;
  return {eps, mu};
}

tw::RadialProfile get_profile(const json &v) {
  require_keys(v, {"shells", "outer"}, "profile");
  std::vector<tw::RadialProfile::Shell> shells;
  if (v.contains("shells")) {
    if (!v["shells"].is_array())
      throw ValidationError("profile.shells must be an array");
    for (std::size_t i = 0; i < v["shells"].size(); ++i) {
      const auto &s = v["shells"][i];
      const std::string where = "profile.shells[" + std::to_string(i) + "]";
      require_keys(s, {"r_out", "eps", "mu"}, where);
      const double r = get_double(required(s, "r_out", where), where + ".r_out");
      json med = json::object();
      if (s.contains("eps"))
        med["eps"] = s["eps"];
      if (s.contains("mu"))
        med["mu"] = s["mu"];
      shells.push_back({r, get_medium(med, where)});
    }
  }
  const tw::Medium outer = get_medium(required(v, "outer", "profile"), "profile.outer");
  return {std::move(shells), outer};
}

json load_json(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in)
    throw ValidationError("cannot open '" + path.string() + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error &e) {
    throw ValidationError("malformed JSON in '" + path.string() + "': " + e.what());
  }
}

namespace {

constexpr const char *kCsvHeader =
    "r,theta,phi,Er_re,Er_im,Etheta_re,Etheta_im,Ephi_re,Ephi_im,"
    "Hr_re,Hr_im,Htheta_re,Htheta_im,Hphi_re,Hphi_im";

json vec_json(const tw::CVec3 &v) {
  return json::array({to_json(v[0]), to_json(v[1]), to_json(v[2])});
}

tw::CVec3 get_vec(const json &v, std::string_view what) {
  if (!v.is_array() || v.size() != 3)
    throw ValidationError(std::string(what) + " must hold 3 complex components");
  return {get_complex(v[0], what), get_complex(v[1], what), get_complex(v[2], what)};
}

std::vector<tw::FieldSample> read_samples_json(const std::filesystem::path &path) {
  const json doc = load_json(path);
  require_keys(doc, {"frame", "samples"}, "sample file");
  if (doc.contains("frame") && doc["frame"] != "spherical")
    throw ValidationError("projection needs samples in the spherical frame");
  const json &arr = required(doc, "samples", "sample file");
  if (!arr.is_array())
    throw ValidationError("'samples' must be an array");
  std::vector<tw::FieldSample> out;
  for (const auto &s : arr) {
    require_keys(s, {"r", "theta", "phi", "e", "h"}, "sample");
    out.push_back({{get_double(required(s, "r", "sample"), "r"),
                    get_double(required(s, "theta", "sample"), "theta"),
                    get_double(required(s, "phi", "sample"), "phi")},
                   get_vec(required(s, "e", "sample"), "e"),
                   get_vec(required(s, "h", "sample"), "h")});
  }
  return out;
}

double parse_number(const std::string &cell, std::size_t line) {
  double v = 0.0;
  const auto *b = cell.data(), *e = cell.data() + cell.size();
  const auto res = std::from_chars(b, e, v);
  if (res.ec != std::errc() || res.ptr != e)
    throw ValidationError("line " + std::to_string(line) + ": bad number '" + cell + "'");
  return v;
}

std::vector<tw::FieldSample> read_samples_csv(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in)
    throw ValidationError("cannot open '" + path.string() + "'");
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader)
    throw ValidationError("'" + path.string() +
                          "' is not a spherical-frame field sample CSV");
  std::vector<tw::FieldSample> out;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty())
      continue;
    std::vector<double> v;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ','))
      v.push_back(parse_number(cell, lineno));
    if (v.size() != 15)
      throw ValidationError("line " + std::to_string(lineno) + ": expected 15 columns");
    out.push_back({{v[0], v[1], v[2]},
                   {{v[3], v[4]}, {v[5], v[6]}, {v[7], v[8]}},
                   {{v[9], v[10]}, {v[11], v[12]}, {v[13], v[14]}}});
  }
  return out;
}

} // namespace

void write_samples_csv(std::ostream &os, const std::vector<tw::FieldSample> &samples) {
  os << kCsvHeader << '\n';
  for (const auto &s : samples) {
    os << fmt(s.position.r) << ',' << fmt(s.position.theta) << ',' << fmt(s.position.phi);
    for (const tw::CVec3 *v : {&s.e, &s.h})
      for (int i = 0; i < 3; ++i)
        os << ',' << fmt((*v)[i].real()) << ',' << fmt((*v)[i].imag());
    os << '\n';
  }
}

json samples_to_json(const std::vector<tw::FieldSample> &samples) {
  json arr = json::array();
  for (const auto &s : samples)
    arr.push_back({{"r", s.position.r},
                   {"theta", s.position.theta},
                   {"phi", s.position.phi},
                   {"e", vec_json(s.e)},
                   {"h", vec_json(s.h)}});
  return {{"frame", "spherical"}, {"samples", std::move(arr)}};
}

std::vector<tw::FieldSample> read_samples(const std::filesystem::path &path) {
  return path.extension() == ".json" ? read_samples_json(path) : read_samples_csv(path);
}

unsigned worker_count() {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char *env = std::getenv("TW_THREADS")) {
    const std::string s(env);
    unsigned cap = 0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), cap);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size() || cap == 0)
      throw ValidationError("TW_THREADS must be a positive integer, got '" + s + "'");
    n = std::min(n, cap);
  }
  return n;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)> &body) {
  const std::size_t workers = std::min<std::size_t>(worker_count(), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i)
      body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  // Keep the failure with the lowest index: every smaller index was claimed
  // earlier and runs to completion, so the reported error is deterministic.
  std::size_t failed_at = n;
  std::exception_ptr failure;
  std::mutex mu;
  auto run = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        body(i);
      } catch (...) {
        std::lock_guard lock(mu);
        if (i < failed_at) {
          failed_at = i;
          failure = std::current_exception();
        }
        next = n;
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < workers; ++t)
    pool.emplace_back(run);
  for (auto &t : pool)
    t.join();
  if (failure)
    std::rethrow_exception(failure);
}

} // namespace twcli
