#pragma once

#include <string>

#include "json.hpp"

#include "bidisk/bipoly.hpp"
#include "bidisk/hardy_ops.hpp"
#include "bidisk/kernel.hpp"
#include "bidisk/subhardy.hpp"

namespace bidisk {

using Json = nlohmann::json;

// {"terms": [{"i": int, "j": int, "re": float, "im": float}, ...]}
// BiPoly requires i, j >= 0; TrigPoly takes any integers. Duplicate (i, j)
// entries are rejected.
Json to_json(const BiPoly& p);
Json to_json(const TrigPoly& t);
BiPoly bipoly_from_json(const Json& j);
TrigPoly trigpoly_from_json(const Json& j);

// Tagged tree, e.g. {"kind":"r_kernel","phi":...,"psi":...},
// {"kind":"power","alpha":2,"base":...}.
Json to_json(const KernelExpr& k);
KernelExpr kernel_from_json(const Json& j);

// [{"z1":[re,im],"z2":[re,im]}, ...]
Json to_json(const PointSet& s);
PointSet pointset_from_json(const Json& j);

// {"points":..., "coeffs":[[re,im],...], "value":float}
Json to_json(const NegativityCertificate& c);

// {"form":"ex1|ex2|ex3","f1":...,"f2":...,"f3":...|null,"g":...}
Json to_json(const Decomposition& d);
Decomposition decomposition_from_json(const Json& j);

// Debug dump of a truncated operator matrix: both index maps as [i,j]
// lists plus row-major [re,im] entries.
Json to_json(const OpMatrix& a);

// Reads and parses a file; wraps failures in ConfigError.
Json load_json_file(const std::string& path);

}  // namespace bidisk
