#pragma once

// File formats and small utilities shared by the CLI commands.

#include "tw/synthesis.hpp"

#include <json.hpp>

#include <filesystem>
#include <functional>
#include <initializer_list>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace twcli {

using json = nlohmann::ordered_json;

/// Shortest decimal string that reads back to the same double.
std::string fmt(double v);

json to_json(tw::cplx z);
json to_json(const tw::Coeff2 &c);
json to_json(const tw::TangentialState &w);

/// Throws tw::ValidationError naming `where` if `obj` is not an object or
/// has a key outside `allowed`.
void require_keys(const json &obj, std::initializer_list<std::string_view> allowed,
                  std::string_view where);
/// Throws unless `obj` has `key`.
const json &required(const json &obj, std::string_view key, std::string_view where);

double get_double(const json &v, std::string_view what);
int get_int(const json &v, std::string_view what);
/// [re, im] or a plain number.
tw::cplx get_complex(const json &v, std::string_view what);
tw::Coeff2 get_coeff2(const json &v, std::string_view what);
tw::TangentialState get_state(const json &v, std::string_view what);

/// {"eps": [re, im], "mu": [re, im]}
tw::Medium get_medium(const json &v, std::string_view what);
/// {"shells": [{"r_out": r, "eps": [...], "mu": [...]}, ...],
///  "outer": {"eps": [...], "mu": [...]}}
tw::RadialProfile get_profile(const json &v);

/// Parses a JSON document; malformed input becomes tw::ValidationError.
json load_json(const std::filesystem::path &path);

/// Field samples in the local spherical frame. CSV columns:
/// r,theta,phi then Re/Im pairs of E_r, E_theta, E_phi, H_r, H_theta, H_phi.
void write_samples_csv(std::ostream &os, const std::vector<tw::FieldSample> &samples);
json samples_to_json(const std::vector<tw::FieldSample> &samples);
/// Reads either format (chosen by the .json extension).
std::vector<tw::FieldSample> read_samples(const std::filesystem::path &path);

/// Worker count: hardware concurrency capped by TW_THREADS when set.
/// Throws tw::ValidationError for a malformed TW_THREADS.
unsigned worker_count();

/// Runs body(i) for i in [0, n) on up to worker_count() threads. Each index
/// is processed exactly once; callers write into preallocated slots, so the
/// result never depends on scheduling. The first exception is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)> &body);

} // namespace twcli
