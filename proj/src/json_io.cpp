#include "hyperhet/json_io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>

namespace hyperhet {

namespace {

template <typename T>
T get_field(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw JsonFormatError(std::string("missing field \"") + key + "\"");
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception& e) {
        throw JsonFormatError(std::string("field \"") + key + "\": " + e.what());
    }
}

// Non-finite numbers are not valid JSON; they are written as null.
Json number(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

Json vector_json(const std::vector<double>& v) {
    Json a = Json::array();
    for (double x : v) a.push_back(number(x));
    return a;
}

std::vector<std::pair<Exponents, double>> read_terms(const Json& j) {
    if (!j.is_array()) throw JsonFormatError("polynomial must be a list of {\"exponents\", \"coeff\"}");
    std::vector<std::pair<Exponents, double>> out;
    for (const auto& t : j) {
        auto e = get_field<Exponents>(t, "exponents");
        auto c = get_field<double>(t, "coeff");
        if (!std::isfinite(c)) throw JsonFormatError("non-finite coefficient");
        for (int k : e) {
            if (k < 0) throw JsonFormatError("negative exponent");
        }
        out.emplace_back(std::move(e), c);
    }
    return out;
}

Json terms_json(const std::map<Exponents, double>& terms) {
    Json a = Json::array();
    for (const auto& [e, c] : terms) a.push_back(Json{{"exponents", e}, {"coeff", c}});
    return a;
}

} // namespace

Json to_json(const Hyperedge& e) { return Json{{"tail", e.tail}, {"head", e.head}}; }

Json to_json(const Hypergraph& h) {
    Json edges = Json::array();
    for (const auto& e : h.edges()) edges.push_back(to_json(e));
    return Json{{"n", h.n()}, {"edges", edges}};
}

Hypergraph hypergraph_from_json(const Json& j) {
    const int n = get_field<int>(j, "n");
    if (!j.contains("edges")) throw JsonFormatError("missing field \"edges\"");
    const auto& list = j.at("edges");
    if (!list.is_array()) throw JsonFormatError("\"edges\" must be a list");
    try {
        std::vector<Hyperedge> edges;
        for (const auto& e : list) edges.emplace_back(get_field<VertexSet>(e, "tail"), get_field<VertexSet>(e, "head"));
        return Hypergraph(n, std::move(edges));
    } catch (const std::invalid_argument& e) {
        throw JsonFormatError(std::string("invalid hypergraph: ") + e.what());
    }
}

Json to_json(const Polynomial& p) { return terms_json(p.terms()); }

Polynomial polynomial_from_json(const Json& j, std::size_t num_vars) {
    Polynomial p(num_vars);
    for (const auto& [e, c] : read_terms(j)) {
        if (e.size() != num_vars) throw JsonFormatError("exponent tuple of length " + std::to_string(e.size()) +
                                                        ", expected " + std::to_string(num_vars));
        p.add_term(e, c);
    }
    return p;
}

Json to_json(const SymmetricPolynomial& g) { return terms_json(g.canonical_terms()); }

SymmetricPolynomial symmetric_from_json(const Json& j, int arity, bool& symmetrized) {
    symmetrized = false;
    const auto terms = read_terms(j);
    std::map<Exponents, std::vector<std::pair<Exponents, double>>> orbits;
    for (const auto& [e, c] : terms) {
        if (static_cast<int>(e.size()) != arity) {
            throw JsonFormatError("coupling monomial of length " + std::to_string(e.size()) + " for arity " +
                                  std::to_string(arity));
        }
        orbits[SymmetricPolynomial::canonical(e)].emplace_back(e, c);
    }
    SymmetricPolynomial out(arity);
    try {
        for (const auto& [key, members] : orbits) {
            if (members.size() == 1 && members.front().first == key) {
                out.add(key, members.front().second);
                continue;
            }
            bool changed = false;
            const SymmetricPolynomial avg = SymmetricPolynomial::symmetrize(arity, members, changed);
            symmetrized = symmetrized || changed;
            for (const auto& [e, c] : avg.canonical_terms()) out.add(e, c);
        }
    } catch (const std::invalid_argument& e) {
        throw JsonFormatError(std::string("invalid coupling polynomial: ") + e.what());
    }
    return out;
}

Json to_json(const CouplingScheme& s) {
    Json j;
    j["internal"] = to_json(s.internal);
    Json couplings = Json::array();
    if (s.mode == CouplingScheme::Mode::homogeneous) {
        j["mode"] = "homogeneous";
        for (const auto& [m, g] : s.by_order) couplings.push_back(Json{{"order", m}, {"terms", to_json(g)}});
    } else {
        j["mode"] = "per-edge";
        for (const auto& [e, g] : s.by_edge) {
            couplings.push_back(Json{{"tail", e.tail}, {"head", e.head}, {"terms", to_json(g)}});
        }
    }
    j["couplings"] = couplings;
    return j;
}

CouplingScheme scheme_from_json(const Json& j, std::vector<std::string>& warnings) {
    if (!j.is_object()) throw JsonFormatError("scheme must be an object");
    const Polynomial internal = j.contains("internal") ? polynomial_from_json(j.at("internal"), 1) : Polynomial(1);
    const auto mode = get_field<std::string>(j, "mode");
    const Json couplings = j.contains("couplings") ? j.at("couplings") : Json::array();
    if (!couplings.is_array()) throw JsonFormatError("\"couplings\" must be a list");
    CouplingScheme s;
    if (mode == "homogeneous") {
        std::map<int, SymmetricPolynomial> by_order;
        for (const auto& c : couplings) {
            const int m = get_field<int>(c, "order");
            if (m < 2) throw JsonFormatError("coupling order must be at least 2");
            if (by_order.count(m)) throw JsonFormatError("duplicate coupling for order " + std::to_string(m));
            bool changed = false;
            by_order.emplace(m, symmetric_from_json(get_field<Json>(c, "terms"), m, changed));
            if (changed) warnings.push_back("order-" + std::to_string(m) + " coupling was symmetrized over its inputs");
        }
        s = CouplingScheme::homogeneous(internal, std::move(by_order));
    } else if (mode == "per-edge") {
        std::map<Hyperedge, SymmetricPolynomial> by_edge;
        for (const auto& c : couplings) {
            Hyperedge e;
            try {
                e = Hyperedge(get_field<VertexSet>(c, "tail"), get_field<VertexSet>(c, "head"));
            } catch (const std::invalid_argument& err) {
                throw JsonFormatError(std::string("invalid coupling edge: ") + err.what());
            }
            if (by_edge.count(e)) throw JsonFormatError("duplicate coupling for an edge");
            bool changed = false;
            by_edge.emplace(e, symmetric_from_json(get_field<Json>(c, "terms"), e.order(), changed));
            if (changed) warnings.push_back("coupling of an order-" + std::to_string(e.order()) + " edge was symmetrized over its inputs");
        }
        s = CouplingScheme::per_edge(internal, std::move(by_edge));
    } else {
        throw JsonFormatError("unknown scheme mode \"" + mode + "\"");
    }
    try {
        s.validate();
    } catch (const std::invalid_argument& e) {
        throw JsonFormatError(std::string("invalid scheme: ") + e.what());
    }
    return s;
}

Json to_json(const Hypergraph& h, const CouplingScheme& s) { return Json{{"hypergraph", to_json(h)}, {"scheme", to_json(s)}}; }

SystemDocument system_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("hypergraph") || !j.contains("scheme")) {
        throw JsonFormatError("system document needs \"hypergraph\" and \"scheme\"");
    }
    SystemDocument d;
    d.hypergraph = hypergraph_from_json(j.at("hypergraph"));
    d.scheme = scheme_from_json(j.at("scheme"), d.warnings);
    if (d.scheme.mode == CouplingScheme::Mode::per_edge) {
        for (const auto& [e, g] : d.scheme.by_edge) {
            if (!d.hypergraph.contains(e)) throw JsonFormatError("scheme assigns a coupling to an edge not in the hypergraph");
        }
    }
    return d;
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw JsonFormatError("cannot open " + path);
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw JsonFormatError(path + ": " + e.what());
    }
}

Json to_json(const GHParams& p) { return Json{{"a", p.a}, {"b", p.b}, {"c", p.c}}; }

Json to_json(const SymmetryWitness& w) {
    return Json{{"kind", w.kind},
                {"vertex", w.vertex},
                {"i", w.i},
                {"j", w.j},
                {"realizable_dimension", w.realizable_dimension},
                {"realizable_defect", number(w.realizable_defect)},
                {"target_defect", number(w.target_defect)},
                {"verified", w.verified},
                {"description", w.description}};
}

Json to_json(const RealizationResult& r) {
    Json j;
    j["realized"] = r.realized;
    j["params"] = to_json(r.params);
    if (r.realized) {
        j["construction"] = r.construction;
        j["scheme"] = to_json(*r.scheme);
        Json unused = Json::array();
        for (const auto& e : r.unused_edges) unused.push_back(to_json(e));
        j["unused_edges"] = unused;
        j["identity_residual"] = number(r.identity_residual);
    } else {
        Json reasons = Json::array();
        for (auto o : r.reasons) reasons.push_back(to_string(o));
        j["reason"] = r.reasons.empty() ? Json(nullptr) : reasons.front();
        j["reasons"] = reasons;
        j["witness"] = r.witness ? to_json(*r.witness) : Json(nullptr);
    }
    j["detail"] = r.detail;
    return j;
}

Json to_json(const FieldCoefficients& c) {
    return Json{{"mu1", c.mu1}, {"mu2", c.mu2}, {"mu3", c.mu3}, {"d0", c.d0}, {"d1", c.d1},
                {"d2", c.d2},   {"e0", c.e0},   {"e1", c.e1},   {"e2", c.e2}};
}

FieldCoefficients field_coefficients_from_json(const Json& j) {
    FieldCoefficients c;
    c.mu1 = get_field<double>(j, "mu1");
    c.mu2 = get_field<double>(j, "mu2");
    c.mu3 = get_field<double>(j, "mu3");
    c.d0 = get_field<double>(j, "d0");
    c.d1 = get_field<double>(j, "d1");
    c.d2 = get_field<double>(j, "d2");
    c.e0 = get_field<double>(j, "e0");
    c.e1 = get_field<double>(j, "e1");
    c.e2 = get_field<double>(j, "e2");
    return c;
}

Json to_json(const SaddleData& s) {
    return Json{{"z", s.z},
                {"lambda_delta", s.lambda_delta},
                {"plane_a", to_string(s.plane_a)},
                {"lambda_a", s.lambda_a},
                {"plane_b", to_string(s.plane_b)},
                {"lambda_b", s.lambda_b},
                {"hyperbolic", s.hyperbolic},
                {"unstable_plane", s.unstable_plane() ? Json(to_string(*s.unstable_plane())) : Json(nullptr)}};
}

Json to_json(const ConnectionEvidence& e) {
    auto attempt = [](const BranchAttempt& a) {
        return Json{{"branch", a.branch},
                    {"reached", a.reached},
                    {"time", number(a.time)},
                    {"terminal_distance", number(a.terminal_distance)},
                    {"side", a.side}};
    };
    Json attempts = Json::array();
    for (const auto& a : e.attempts) attempts.push_back(attempt(a));
    return Json{{"plane", to_string(e.plane)},  {"epsilon", e.epsilon},         {"delta_accept", e.delta_accept},
                {"t_max", e.t_max},             {"connected", e.connected},     {"time", number(e.best.time)},
                {"terminal_distance", number(e.best.terminal_distance)},        {"side", e.best.side},
                {"attempts", attempts}};
}

Json to_json(const Itinerary& it) {
    Json eps = Json::array();
    for (const auto& e : it.episodes) {
        eps.push_back(Json{{"id", e.id}, {"entry", e.entry}, {"dwell", e.dwell}, {"complete", e.complete}});
    }
    return Json{{"radius", it.radius}, {"episodes", eps}};
}

Json to_json(const ItineraryEvidence& e) {
    return Json{{"x0", vector_json(e.x0)},
                {"t_end", e.t_end},
                {"alternating", e.alternating},
                {"growing", e.growing},
                {"itinerary", to_json(e.itinerary)}};
}

Json to_json(const FieldRealization& r) {
    Json j;
    j["found"] = r.found;
    j["seed"] = r.seed;
    j["draws"] = r.draws;
    Json rej = Json::object();
    for (const auto& [k, v] : r.rejections) rej[k] = v;
    j["rejections"] = rej;
    if (!r.found) {
        j["failure"] = r.failure;
        return j;
    }
    j["coefficients"] = to_json(r.coefficients);
    j["scheme"] = to_json(*r.scheme);
    j["p"] = to_json(r.p);
    j["q"] = to_json(r.q);
    j["p_to_q"] = to_json(r.p_to_q);
    j["q_to_p"] = to_json(r.q_to_p);
    j["itinerary"] = r.itinerary ? to_json(*r.itinerary) : Json(nullptr);
    return j;
}

Json census_to_json(const Hypergraph& h) {
    Json subspaces = Json::array();
    for (Subspace s : robust_subspace_census(h)) {
        subspaces.push_back(Json{{"name", to_string(s)}, {"classes", partition_of(s).classes()}});
    }
    return Json{{"robust_subspaces", subspaces},
                {"full_sync_balanced", full_sync_balance(h)},
                {"local_field_verdict", to_string(local_obstruction_field(h))}};
}

Json uniform3_row(int pi, int phi, int psi) {
    Json j;
    j["triple"] = {pi, phi, psi};
    const auto iv = uniform3_conditions(pi, phi, psi) ? uniform3_alpha_interval(pi, phi, psi) : std::nullopt;
    j["feasible"] = iv.has_value();
    if (!iv) {
        j["alpha_interval"] = nullptr;
        j["params"] = nullptr;
        j["example_hypergraph"] = nullptr;
        return j;
    }
    j["alpha_interval"] = {iv->lower, iv->upper};
    const Uniform3Params p = uniform3_params(pi, phi, psi, 0.5 * (iv->lower + iv->upper));
    j["params"] = Json{{"alpha", p.alpha}, {"beta", p.beta}, {"a", p.gh.a}, {"b", p.gh.b}, {"c", p.gh.c}};
    const auto h = construct_config_hypergraph(pi, phi, psi);
    j["example_hypergraph"] = h ? to_json(*h) : Json(nullptr);
    return j;
}

Json to_json(const Trajectory& t, bool include_states) {
    Json j;
    j["dimension"] = t.dimension;
    j["method"] = t.method;
    j["rtol"] = t.rtol;
    j["atol"] = t.atol;
    j["log_coordinates"] = t.log_coordinates;
    j["accepted_steps"] = t.accepted;
    j["rejected_steps"] = t.rejected;
    j["stopped_early"] = t.stopped_early;
    j["escaped"] = t.escaped;
    j["warnings"] = t.warnings;
    j["t_end"] = t.times.empty() ? Json(nullptr) : Json(t.times.back());
    j["final_state"] = t.states.empty() ? Json(nullptr) : vector_json(t.states.back());
    if (include_states) {
        j["times"] = vector_json(t.times);
        Json states = Json::array();
        for (const auto& s : t.states) states.push_back(vector_json(s));
        j["states"] = states;
    }
    return j;
}

} // namespace hyperhet
