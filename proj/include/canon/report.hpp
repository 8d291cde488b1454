#pragma once

#include "json.hpp"

#include "canon/bundle.hpp"
#include "canon/cone.hpp"
#include "canon/form.hpp"
#include "canon/matrix.hpp"
#include "canon/spanlab.hpp"

namespace canon {

using Json = nlohmann::ordered_json;

/// Coefficients as [[exponent tuple], value] pairs in the fixed monomial order, zeros omitted.
Json form_json(const Form& f);
Json vec_json(const Vec& v);
Json matrix_json(const Matrix& m);
Json certificate_json(const ConeCertificate& c);
/// { "W": rows, "coeffs": ..., "certificate": ... }
Json cone_json(const QuarticCone& cone);
Json span_json(const SpanAccumulator& span);
Json probe_json(const BaseLocusReport& r);

}  // namespace canon
