#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <random>
#include <string>

#include "fpindex/errors.hpp"
#include "fpindex/fingerprint_index.hpp"
#include "fpindex/oracle.hpp"
#include "fpindex/seqcore.hpp"
#include "fpindex/serialize.hpp"

namespace py = pybind11;
using namespace fpindex;

namespace {

constexpr std::uint64_t kDefaultSeed = 20260819;

BuildMode mode_of(const std::string& builder) {
    if (builder == "exact") return BuildMode::Exact;
    if (builder == "randomized") return BuildMode::Randomized;
    if (builder == "mc") return BuildMode::MonteCarlo;
    throw Error("unknown builder \"" + builder + "\" (expected exact, randomized, or mc)");
}

const char* kind_name(ReportKind k) {
    switch (k) {
        case ReportKind::TreePaths: return "tree_paths";
        case ReportKind::LocationLists: return "location_lists";
        case ReportKind::NamesOnly: return "names_only";
    }
    return "?";
}

FingerprintIndex build_index(const std::string& text, const std::string& builder,
                             std::uint64_t seed, unsigned mc_confidence, bool names_only) {
    BuildMode mode = mode_of(builder);
    if (names_only && mode != BuildMode::MonteCarlo)
        throw Error("names_only requires the mc builder");
    auto [seq, alpha] = normalize(text);
    std::mt19937_64 rng(seed);
    return FingerprintIndex::build(seq, alpha, mode, rng, mc_confidence, !names_only);
}

std::string alphabet_string(const FingerprintIndex& idx) {
    std::string out;
    for (Rank r = 0; r < idx.alphabet().sigma(); ++r)
        out.push_back(static_cast<char>(idx.alphabet().unrank(r)));
    return out;
}

}  // namespace

PYBIND11_MODULE(_fpindex, m) {
    m.doc() = "Index of the distinct-character sets of a text's substrings.";

    // Most-derived exceptions registered last so their translators run first.
    py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<FormatError>(m, "FormatError", PyExc_ValueError);
    py::register_exception<UnknownFingerprint>(m, "UnknownFingerprint", PyExc_KeyError);

    py::class_<FingerprintIndex>(m, "Index")
        .def_static("build", &build_index, py::arg("text"), py::arg("builder") = "exact",
                    py::arg("seed") = kDefaultSeed, py::arg("mc_confidence") = 2,
                    py::arg("names_only") = false,
                    "Build an index over a byte text. builder is one of \"exact\", "
                    "\"randomized\", or \"mc\".")
        .def_static("load", &load_index_file, py::arg("path"),
                    "Load an index from a file written by save().")
        .def("save", &save_index_file, py::arg("path"),
             "Write the index to a file in its binary container format.")
        .def("exists", [](const FingerprintIndex& idx, const std::string& q) {
            return idx.exists(q);
        }, py::arg("chars"),
           "Whether some substring's distinct-character set equals the set of chars.")
        .def("report", [](const FingerprintIndex& idx, const std::string& q) {
            auto locs = idx.report(q);
            std::vector<std::pair<Pos, Pos>> out;
            out.reserve(locs.size());
            for (auto l : locs) out.emplace_back(l.i, l.j);
            return out;
        }, py::arg("chars"),
           "All maximal locations of that character set, as (i, j) pairs in "
           "collapsed coordinates.")
        .def("report_raw", &FingerprintIndex::report_raw, py::arg("chars"),
             "Like report(), but in raw input-byte coordinates.")
        .def("to_json", &index_to_json, "Whole index rendered as a JSON string.")
        .def_property_readonly("fingerprints", &FingerprintIndex::fingerprint_count)
        .def_property_readonly("locations", &FingerprintIndex::location_count)
        .def_property_readonly("kind", [](const FingerprintIndex& idx) {
            return kind_name(idx.report_kind());
        })
        .def_property_readonly("n", [](const FingerprintIndex& idx) {
            return idx.sequence().n();
        })
        .def_property_readonly("raw_length", [](const FingerprintIndex& idx) {
            return idx.sequence().raw_length();
        })
        .def_property_readonly("sigma", [](const FingerprintIndex& idx) {
            return idx.alphabet().sigma();
        })
        .def_property_readonly("alphabet", &alphabet_string)
        .def("__repr__", [](const FingerprintIndex& idx) {
            return "<fpindex.Index " + std::string(kind_name(idx.report_kind())) + ", n=" +
                   std::to_string(idx.sequence().n()) + ", fingerprints=" +
                   std::to_string(idx.fingerprint_count()) + ">";
        });

    m.def("gen_wk", &gen_wk, py::arg("k"),
          "The k-th member of the scaling word family, as a string.");
}
