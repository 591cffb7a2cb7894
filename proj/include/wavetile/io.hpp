#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "wavetile/frames.hpp"
#include "wavetile/report.hpp"
#include "wavetile/testfn.hpp"
#include "wavetile/tiling.hpp"

namespace wavetile {

using Json = nlohmann::ordered_json;

// Exact dyadic literals: "p/2^q", "p/q" with q a power of two, a plain
// integer, or a decimal whose fraction part is exactly dyadic ("0.375").
// Anything else (including "0.1") is rejected, never rounded.
Dyadic parse_dyadic(const std::string& text);

// Shortest decimal that round-trips to the same double; -0 prints as 0.
std::string format_double(double x);
// "re+imi" with both parts in round-trip form, e.g. "1+0i", "0.5-0.25i".
std::string format_complex(const Complex& z);

// JSON forms. Dyadics read back from the object form, a literal string,
// or a bare integer; everything else reads the shape it writes.
Json to_json(const Dyadic& x);           // {"mant": "...", "exp": n}
Json to_json(const DyadicInterval& iv);  // {"lo": ..., "hi": ...}
Json to_json(const Complex& z);          // [re, im]
Json to_json(const VerificationReport& report);
Json to_json(const StepProfile& profile);  // [{"support": ..., "amp": ...}]
Json to_json(const TensorSum2D& f);        // {"terms": [...]}
Json to_json(const ModeExpansion& f);      // [{"cell": [k,l], "amp": ...}]

Dyadic dyadic_from_json(const Json& j);
DyadicInterval interval_from_json(const Json& j);
Complex complex_from_json(const Json& j);
StepProfile profile_from_json(const Json& j);
TensorSum2D tensor_from_json(const Json& j);
ModeExpansion modes_from_json(const Json& j);

// Pairing tables: an array of [k, l] cells or nulls; entry i names the
// cell with index i + 1.
Json table_to_json(const std::vector<std::optional<Cell>>& rows);
std::vector<std::optional<Cell>> table_from_json(const Json& j);

// CSV with header "k,m,x1_lo,x1_hi,xi1_lo,xi1_hi,r"; exact decimal cells.
std::string slice_csv(const std::vector<SliceRow>& rows);

// Built-in inputs so the verification suites run with zero authoring.
// Modes: e00, e10, e01, mix. Profiles: shannon, shannon-normalized,
// full-band, quarter-band. Tensors: band-e00, band58, psi-trunc, plus
// every parseval_family name. Windows: unit.
ModeExpansion preset_modes(const std::string& name);
StepProfile preset_profile(const std::string& name);
TensorSum2D preset_tensor(const GeneratorSpec& spec, const std::string& name);
Window4D preset_window(const std::string& name);

// Named band/mode test family: indicators of band d = 1..5 on four lattice
// modes ("b3-e10" is band 3 on e_{1,0}), plus the tensor presets above.
std::vector<std::pair<std::string, TensorSum2D>> parseval_family(
    const GeneratorSpec& spec);

}  // namespace wavetile
