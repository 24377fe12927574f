#pragma once

// Flat JSON views of the report types, used by the command-line tool.

#include <json.hpp>

#include "twodist/linalg.hpp"
#include "twodist/realize.hpp"
#include "twodist/spherical.hpp"

namespace twodist {

inline nlohmann::ordered_json to_json(const SphericalReport& r) {
  nlohmann::ordered_json j;
  j["n"] = r.n;
  j["d"] = r.d;
  j["representable"] = r.representable;
  j["spherical"] = r.spherical;
  j["lambda1"] = r.lambda1;
  j["lambda2"] = r.lambda2;
  j["mult_lambda2_A"] = r.mult_lambda2_A;
  j["mult_lambda2_PAP"] = r.mult_lambda2_PAP;
  j["mu1"] = r.mu1;
  j["ratio_k"] = r.ratio_k ? nlohmann::ordered_json(*r.ratio_k) : nlohmann::ordered_json(nullptr);
  j["min_dimension"] = r.min_dimension ? nlohmann::ordered_json(*r.min_dimension) : nlohmann::ordered_json(nullptr);
  j["borderline"] = r.borderline;
  j["certified"] = r.certified;
  return j;
}

inline nlohmann::ordered_json to_json(const ConditionTrace& t) {
  nlohmann::ordered_json j;
  j["representable"] = t.representable;
  j["lambda2_positive"] = t.lambda2_positive;
  j["psd_on_complement"] = t.psd_on_complement;
  j["constant_image"] = t.constant_image;
  j["singular"] = t.singular;
  j["eventually_psd"] = t.eventually_psd;
  j["ones_orthogonal"] = t.ones_orthogonal;
  j["null_vectors_annihilated"] = t.null_vectors_annihilated;
  j["verdict"] = t.verdict;
  j["reason"] = t.reason;
  j["gamma"] = t.gamma;
  j["witness"] = t.witness;
  j["null_space_dim"] = t.null_vectors.size();
  return j;
}

inline nlohmann::ordered_json to_json(const Embedding& e) {
  nlohmann::ordered_json j;
  j["dim"] = e.dim;
  j["k"] = e.long_dist;
  j["short_dist"] = e.short_dist;
  j["long_dist"] = e.long_dist;
  j["points"] = e.points;
  j["circumcenter"] = e.circumcenter ? nlohmann::ordered_json(*e.circumcenter) : nlohmann::ordered_json(nullptr);
  j["circumradius"] = e.circumradius ? nlohmann::ordered_json(*e.circumradius) : nlohmann::ordered_json(nullptr);
  return j;
}

}  // namespace twodist
