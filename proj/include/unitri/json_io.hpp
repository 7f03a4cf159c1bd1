#pragma once

#include "unitri/elimination.hpp"
#include "unitri/shears.hpp"
#include "unitri/sl2.hpp"
#include "unitri/verify.hpp"
#include "unitri/zp.hpp"

#include <json.hpp>

#include <string_view>

namespace unitri {

using Json = nlohmann::ordered_json;

Json to_json(const Element &x);
/// Matrix as an array of rows of element strings.
Json to_json(const Matrix &m);
/// 1-based indices.
Json to_json(const Transvection &t);
Json to_json(const Block &b);
/// Blocks, target, pattern and the verification report.
Json to_json(const Factorisation &f);
Json to_json(const GaussDecomposition &g);
Json to_json(const Sl2Trace &t);
Json to_json(const Lemma6Trace &t);
Json to_json(const VerifyReport &r);
Json to_json(const EnumerationReport &r);
Json to_json(const CommutatorDecomposition &c);
Json to_json(const RealMatrix &m);
Json to_json(const ShearDecomposition &d);

/// Entries may be JSON integers or strings in the ring's text syntax.
/// Throws parse_error naming the row and column (1-based).
Matrix parse_matrix(std::string_view text, const Ring &ring);
Matrix matrix_from_json(const Json &j, const Ring &ring);

/// Inverse of to_json(Factorisation); the ring comes from the document.
Factorisation factorisation_from_json(const Json &j);

} // namespace unitri
