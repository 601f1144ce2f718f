// Copyright 2026 The cvqss Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CVQSS_JSON_HPP_
#define CVQSS_JSON_HPP_

// JSON forms of the library's values. Key order is fixed (ordered_json);
// matrices are row-major arrays of rows.
//
//   state    {"n_modes": int, "mean": [..], "cov": [[..], ..]}
//   channel  {"t": [[..]], "n": [[..]]}
//   steering {"e": .., "g": .., "direction": "1|2" | "2|1", "steerable": bool}

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cvqss/errors.hpp"
#include "cvqss/gaussian_channel.hpp"
#include "cvqss/gaussian_state.hpp"
#include "cvqss/qss.hpp"
#include "cvqss/security.hpp"
#include "cvqss/steering.hpp"

namespace cvqss {

using Json = nlohmann::ordered_json;

namespace detail {

inline Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Json vector_to_json(const Vector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

inline Matrix matrix_from_json(const Json& j, const char* what) {
  if (!j.is_array() || j.empty()) {
    throw InvalidArgument(std::string(what) + ": expected a non-empty array of rows");
  }
  const auto rows = static_cast<Eigen::Index>(j.size());
  if (!j.front().is_array()) throw InvalidArgument(std::string(what) + ": rows must be arrays");
  const auto cols = static_cast<Eigen::Index>(j.front().size());
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const Json& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      throw InvalidArgument(std::string(what) + ": ragged matrix");
    }
    for (Eigen::Index k = 0; k < cols; ++k) {
      const Json& x = row[static_cast<std::size_t>(k)];
      if (!x.is_number()) throw InvalidArgument(std::string(what) + ": non-numeric entry");
      m(i, k) = x.get<double>();
    }
  }
  return m;
}

inline Vector vector_from_json(const Json& j, const char* what) {
  if (!j.is_array()) throw InvalidArgument(std::string(what) + ": expected an array");
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) throw InvalidArgument(std::string(what) + ": non-numeric entry");
    v(static_cast<Eigen::Index>(i)) = j[i].get<double>();
  }
  return v;
}

}  // namespace detail

inline void to_json(Json& j, const GaussianState& s) {
  j = Json::object();
  j["n_modes"] = s.n_modes();
  j["mean"] = detail::vector_to_json(s.mean());
  j["cov"] = detail::matrix_to_json(s.cov());
}

inline void to_json(Json& j, const GaussianChannel& ch) {
  j = Json::object();
  j["t"] = detail::matrix_to_json(ch.t());
  j["n"] = detail::matrix_to_json(ch.n());
}

inline void to_json(Json& j, const SteeringResult& r) {
  j = Json::object();
  j["e"] = r.e;
  j["g"] = r.g;
  j["direction"] = std::string(to_string(r.direction));
  j["steerable"] = r.steerable;
}

/// threshold_e is null when no share-3 reconstruction is involved.
inline void to_json(Json& j, const SecurityReport& r) {
  j = Json::object();
  j["fidelity"] = r.fidelity;
  j["e_used"] = r.e_used;
  j["g"] = r.g;
  j["eta"] = r.eta;
  j["threshold_e"] = r.threshold_e;
  j["secure"] = r.secure;
  j["classical_beaten"] = r.classical_beaten;
}

inline void to_json(Json& j, const SecretSpec& s) {
  j = Json::object();
  j["mean"] = {s.mean.x(), s.mean.y()};
  j["zeta"] = s.zeta;
  j["theta"] = s.theta;
  j["nbar"] = s.nbar;
}

inline void to_json(Json& j, const ProtocolRun& run) {
  j = Json::object();
  j["shares_used"] = std::string(to_string(run.share_set));
  j["g"] = run.g;
  j["eta"] = run.eta;
  j["correction"] = std::string(to_string(run.correction));
  j["realization"] = std::string(to_string(run.realization));
  j["input"] = run.input;
  j["shares"] = run.shares;
  j["output"] = run.output;
}

/// Throws InvalidArgument on missing fields or inconsistent sizes.
inline GaussianState state_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("n_modes") || !j.contains("mean") || !j.contains("cov")) {
    throw InvalidArgument("state JSON: expected keys n_modes, mean, cov");
  }
  if (!j["n_modes"].is_number_integer()) throw InvalidArgument("state JSON: n_modes must be int");
  const int n = j["n_modes"].get<int>();
  Vector mean = detail::vector_from_json(j["mean"], "state JSON mean");
  Matrix cov = detail::matrix_from_json(j["cov"], "state JSON cov");
  if (n < 1 || mean.size() != 2 * n) {
    throw InvalidArgument("state JSON: mean length does not match n_modes");
  }
  return GaussianState(std::move(mean), std::move(cov));
}

inline GaussianChannel channel_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("t") || !j.contains("n")) {
    throw InvalidArgument("channel JSON: expected keys t, n");
  }
  return GaussianChannel(detail::matrix_from_json(j["t"], "channel JSON t"),
                         detail::matrix_from_json(j["n"], "channel JSON n"));
}

}  // namespace cvqss

#endif  // CVQSS_JSON_HPP_
