#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hypstab/bounds.hpp"
#include "hypstab/chain.hpp"
#include "hypstab/constants.hpp"
#include "hypstab/cover.hpp"
#include "hypstab/fixtures.hpp"
#include "hypstab/io.hpp"
#include "hypstab/lattice.hpp"
#include "hypstab/simplex.hpp"
#include "hypstab/volume.hpp"

namespace py = pybind11;
using namespace hypstab;

namespace {

py::object to_python(const Json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

py::object fraction(const Rational& r) {
    return py::module_::import("fractions").attr("Fraction")(r.numerator(), r.denominator());
}

py::tuple subgroup_tuple(const LatticeSubgroup& S) { return py::make_tuple(S.a, S.b, S.d); }
LatticeSubgroup subgroup_from(const std::array<long long, 3>& t) { return {t[0], t[1], t[2]}; }

py::dict volume_dict(const VolumeEstimate& v) { return to_python(to_json(v)); }

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Hyperbolic simplex geometry, stability constants and triangulation invariants";
    m.attr("__version__") = "0.1.0";
    m.attr("DEFAULT_SEED") = kDefaultSeed;
    m.attr("DEFAULT_BUDGET") = kDefaultBudget;

    static py::exception<Error> error(m, "Error");
    static py::exception<InvalidArgument> invalid_argument(m, "InvalidArgument", error.ptr());
    static py::exception<DegenerateSimplex> degenerate(m, "DegenerateSimplex", error.ptr());
    static py::exception<InvalidTriangulation> invalid_tri(m, "InvalidTriangulation", error.ptr());
    static py::exception<BranchedCover> branched(m, "BranchedCover", error.ptr());
    static py::exception<ParseError> parse_error(m, "ParseError", error.ptr());
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const BranchedCover& e) {
            py::set_error(branched, (std::string(e.what()) + ": " + e.cycle()).c_str());
        } catch (const InvalidTriangulation& e) {
            std::string msg = e.what();
            for (const auto& i : e.issues()) msg += "; " + i;
            py::set_error(invalid_tri, msg.c_str());
        } catch (const ParseError& e) {
            py::set_error(parse_error, e.what());
        } catch (const DegenerateSimplex& e) {
            py::set_error(degenerate, e.what());
        } catch (const InvalidArgument& e) {
            py::set_error(invalid_argument, e.what());
        } catch (const Error& e) {
            py::set_error(error, e.what());
        }
    });

    // geometry
    m.def("mink", py::overload_cast<const Eigen::VectorXd&, const Eigen::VectorXd&>(&mink), "Minkowski form");
    m.def("minkowski_metric", &minkowski_metric);

    py::class_<GeodesicSimplex>(m, "Simplex")
        .def_static(
            "from_klein",
            [](const std::vector<Eigen::VectorXd>& points, const std::vector<bool>& ideal, double tol) {
                return GeodesicSimplex::from_klein(points, ideal, tol);
            },
            py::arg("points"), py::arg("ideal"), py::arg("tol") = kDefaultTolerance)
        .def_property_readonly("dim", &GeodesicSimplex::dim)
        .def_property_readonly("ambient_dim", &GeodesicSimplex::ambient_dim)
        .def("vertex_matrix", &GeodesicSimplex::vertex_matrix)
        .def("gram", &GeodesicSimplex::gram)
        .def("klein", [](const GeodesicSimplex& K) {
            std::vector<Eigen::VectorXd> out;
            for (const auto& v : K.vertices()) out.push_back(to_klein(v));
            return out;
        })
        .def("ideal", [](const GeodesicSimplex& K) {
            std::vector<bool> out;
            for (const auto& v : K.vertices()) out.push_back(v.is_ideal());
            return out;
        });

    m.def("regular_ideal_simplex", [](int n) { return regular_ideal_simplex(n, n); }, py::arg("n"));
    m.def("dihedral_angle", [](const GeodesicSimplex& K, int i, int j) { return dihedral_angle(K, i, j); });
    m.def("facet_duals", [](const GeodesicSimplex& K) {
        std::vector<Eigen::VectorXd> out;
        for (const auto& d : facet_duals(K)) out.push_back(d.q.coords());
        return out;
    });
    m.def("incenter_inradius", [](const GeodesicSimplex& K) {
        const IncenterResult r = incenter_inradius(K);
        return py::make_tuple(Eigen::VectorXd(r.incenter.rep().coords()), r.inradius);
    });
    m.def("is_degenerate", [](const GeodesicSimplex& K, double tol) { return is_degenerate(K, tol); }, py::arg("K"),
          py::arg("tol") = kDefaultTolerance);
    m.def("min_face_clearance", [](const GeodesicSimplex& K) { return min_face_clearance(K); });
    m.def("distance_point_to_simplex", [](const Eigen::VectorXd& klein, const GeodesicSimplex& K) {
        return distance_point_to_simplex(lift_klein(klein, false), K);
    });

    // volume
    m.def("lobachevsky", &lobachevsky);
    m.def("ball_volume", &ball_volume, py::arg("n"), py::arg("r"));
    m.def("simplex_volume", [](const GeodesicSimplex& K, long long budget, std::uint64_t seed) {
        return volume_dict(simplex_volume(K, budget, seed));
    }, py::arg("K"), py::arg("budget") = kDefaultBudget, py::arg("seed") = kDefaultSeed);
    m.def("simplex_volume_cubature", [](const GeodesicSimplex& K, int order) {
        return volume_dict(simplex_volume_cubature(K, order));
    }, py::arg("K"), py::arg("order") = 0);
    m.def("ideal_regular_volume", [](int n, long long budget, std::uint64_t seed) {
        return volume_dict(ideal_regular_volume(n, budget, seed));
    }, py::arg("n"), py::arg("budget") = kDefaultBudget, py::arg("seed") = kDefaultSeed);
    m.def("maximality_probe", [](int n, int trials, std::uint64_t seed) {
        const MaximalityReport r = maximality_probe(n, trials, seed);
        py::dict d;
        d["n"] = r.n;
        d["trials"] = r.trials;
        d["accepted"] = r.accepted;
        d["v_n"] = r.v_n;
        d["max_volume"] = r.max_volume;
        d["exceedances"] = r.exceedances;
        d["passed"] = r.passed();
        return d;
    }, py::arg("n"), py::arg("trials"), py::arg("seed") = kDefaultSeed);

    // constants
    m.def("alpha_n", &alpha_n);
    m.def("k_n", &k_n);
    m.def("a_n", &a_n);
    m.def("delta_n", &delta_n);
    m.def("alpha_k_table", [](int lo, int hi) {
        py::list out;
        for (const auto& r : alpha_k_table(lo, hi)) out.append(to_python(to_json(r)));
        return out;
    });
    m.def("compute_Cn", &compute_Cn, py::arg("eps"), py::arg("eta"), py::arg("a"), py::arg("v_n"));
    m.def("constants_row", [](int n, long long budget, int restarts, int climb_steps, int audit_restarts,
                              std::uint64_t seed, bool audit) {
        SearchOptions opt;
        opt.restarts = restarts;
        opt.climb_steps = climb_steps;
        opt.audit_restarts = audit_restarts;
        opt.seed = seed;
        ConstantsRow row;
        {
            py::gil_scoped_release release;
            row = constants_row(n, budget, opt);
        }
        return to_python(to_json(row, audit));
    }, py::arg("n"), py::arg("budget") = kDefaultBudget, py::arg("restarts") = SearchOptions{}.restarts,
       py::arg("climb_steps") = SearchOptions{}.climb_steps, py::arg("audit_restarts") = SearchOptions{}.audit_restarts,
       py::arg("seed") = kDefaultSeed, py::arg("audit") = false);

    // combinatorics
    py::class_<Triangulation>(m, "Triangulation")
        .def_static("from_json", &parse_triangulation)
        .def_static("fixture", &fixture)
        .def("to_json", [](const Triangulation& T) { return to_json(T).dump(); })
        .def_property_readonly("dim", &Triangulation::dim)
        .def_property_readonly("simplex_count", &Triangulation::simplex_count);
    m.def("fixture_names", &fixture_names);
    m.def("validate", [](const Triangulation& T) { return to_python(to_json(validate(T))); });
    m.def("cell_counts", [](const Triangulation& T) {
        const CellCounts c = cell_counts(T);
        return py::make_tuple(c.f, c.euler);
    });
    m.def("orientability", [](const Triangulation& T) {
        const Orientability o = orientability(T);
        return py::make_tuple(o.orientable, o.orientable ? o.orientation : o.violating_cycle);
    });
    m.def("links", [](const Triangulation& T) {
        const LinkReport r = links(T);
        std::vector<long long> eulers;
        std::vector<int> valences;
        for (const auto& l : r.links) eulers.push_back(l.euler);
        for (const auto& e : r.valences) valences.push_back(e.valence);
        return py::make_tuple(eulers, valences);
    });
    m.def("fundamental_cycle", [](const Triangulation& T) {
        const Chain z = fundamental_cycle(T);
        return py::make_tuple(verify_cycle(T, z), fraction(z.l1_norm()), z.terms().size());
    }, "(boundary vanishes, L1 norm as a Fraction, term count)");
    m.def("build_cover", [](const Triangulation& T, const std::string& spec_json) {
        Cover c = build_cover(T, parse_cover_spec(spec_json));
        return py::make_tuple(std::move(c.triangulation), c.projection, c.components);
    }, py::arg("T"), py::arg("spec_json"), "spec uses 1-based permutations");
    m.def("verify_covering", &verify_covering);
    m.def("torus_characteristic_cover_spec", [](long long x) {
        return to_json(torus_subgroup_spec(x_characteristic(x))).dump();
    });

    // lattice
    m.def("x_characteristic", [](long long x) { return subgroup_tuple(x_characteristic(x)); });
    m.def("lattice_from_generators", [](std::array<long long, 2> u, std::array<long long, 2> v) {
        return subgroup_tuple(lattice_from_generators(u, v));
    });
    m.def("subgroup_index", [](std::array<long long, 3> S) { return index(subgroup_from(S)); });
    m.def("subgroup_contains", [](std::array<long long, 3> S, std::array<long long, 3> T) {
        return contains(subgroup_from(S), subgroup_from(T));
    }, "True iff the second subgroup lies in the first");
    m.def("enumerate_subgroups", [](long long idx) {
        py::list out;
        for (const auto& S : enumerate_subgroups(idx)) out.append(subgroup_tuple(S));
        return out;
    });
    m.def("sigma1", &sigma1);

    // bounds
    m.def("seifert_bound", [](long long e, long long chi, const std::vector<long long>& ds) {
        std::vector<double> out;
        for (const auto& p : seifert_bound(e, chi, ds).points) out.push_back(p.value);
        return out;
    });
    m.def("jsj_cover_bound", [](double vA, double vB, double vC, double vD, long long h, long long n) {
        const JsjBound b = jsj_cover_bound(vA, vB, vC, vD, h, n);
        return py::make_tuple(b.bound, b.normalized, b.limit);
    });
    m.def("filling_bound", [](double vA, double vB, double vD, long long n) {
        const FillingBound b = filling_bound(vA, vB, vD, n);
        return py::make_tuple(b.normalized, b.limit);
    });
}
