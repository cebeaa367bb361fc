#pragma once

// JSON (de)serialization for every public value type. Rationals travel as
// "p/q" strings, matrices as row-major nested arrays.

#include <nlohmann/json.hpp>

#include "nilpencil/algebra.hpp"
#include "nilpencil/canonical.hpp"
#include "nilpencil/classifier.hpp"
#include "nilpencil/nilsoliton.hpp"
#include "nilpencil/pencil.hpp"
#include "nilpencil/pre_einstein.hpp"

namespace nilpencil {

using json = nlohmann::json;

json to_json(const Rat& r);
json to_json(const RatMatrix& m);
json to_json(const Eigen::MatrixXd& m);
json to_json(const SkewPencil& p);
json to_json(const CanonicalSpec& spec);
json to_json(const PencilInvariants& inv);
json to_json(const TwoStepAlgebra& n);
json to_json(const MetricData& g);
json to_json(const Verdict& v);
json to_json(const PreEinsteinDerivation& d);
json to_json(const EigenvalueType& t);
json to_json(const NiceBasisSolution& sol);
json to_json(const SL2State& st);
json to_json(const NilsolitonCertificate& cert);
json to_json(const DegenerationWitness& w);
json to_json(const DualHeisenberg& dh);
json to_json(const SolitonFit& fit);

// Parsers throw SpecInvalid on malformed content.
Rat rat_from_json(const json& j);
RatMatrix matrix_from_json(const json& j);
SkewPencil pencil_from_json(const json& j);
CanonicalSpec spec_from_json(const json& j);
PencilInvariants invariants_from_json(const json& j);
TwoStepAlgebra algebra_from_json(const json& j);
MetricData metric_from_json(const json& j);

}  // namespace nilpencil
