#include "json.hpp"

#include "canon/curve.hpp"
#include "canon/errors.hpp"

namespace canon {

using nlohmann::json;

namespace {

json form_terms(const Form& f) {
    json terms = json::array();
    const auto& t = f.table();
    for (std::size_t k = 0; k < t.size(); ++k) {
        if (f.coeffs()[k].is_zero()) continue;
        json e = json::array();
        for (auto x : t[k]) e.push_back(static_cast<int>(x));
        terms.push_back(json::array({e, f.coeffs()[k].value()}));
    }
    return terms;
}

template <typename T>
T get_field(const json& j, const char* name) {
    if (!j.contains(name)) throw ConfigError(std::string(name) + ": missing");
    try {
        return j.at(name).get<T>();
    } catch (const json::exception&) {
        throw ConfigError(std::string(name) + ": wrong type");
    }
}

}  // namespace

std::string curve_to_json(const CurveModel& curve, const std::vector<Vec>& points) {
    json j;
    j["genus"] = curve.genus;
    j["prime"] = curve.prime;
    j["seed"] = curve.seed;
    json gens = json::array();
    for (const auto& f : curve.generators) gens.push_back(form_terms(f));
    j["generators"] = gens;
    json pts = json::array();
    for (const auto& x : points) {
        json row = json::array();
        for (Fp c : x) row.push_back(c.value());
        pts.push_back(row);
    }
    j["points"] = pts;
    return j.dump(1) + "\n";
}

CurveFile curve_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("curve file: not valid JSON (") + e.what() + ")");
    }
    const int genus = get_field<int>(j, "genus");
    const auto prime64 = get_field<std::uint64_t>(j, "prime");
    const auto seed = get_field<std::uint64_t>(j, "seed");
    if (genus != 4 && genus != 5) throw UnsupportedGenus("genus: must be 4 or 5");
    if (prime64 > UINT32_MAX || !is_prime(prime64) || prime64 < 3) throw ConfigError("prime: not an odd 32-bit prime");
    const auto prime = static_cast<std::uint32_t>(prime64);
    const auto g = static_cast<std::size_t>(genus);
    const std::vector<std::size_t> degrees = genus == 4 ? std::vector<std::size_t>{2, 3} : std::vector<std::size_t>{2, 2, 2};

    const json gens = get_field<json>(j, "generators");
    if (!gens.is_array() || gens.size() != degrees.size()) throw ConfigError("generators: wrong number of forms");
    std::vector<Form> forms;
    for (std::size_t i = 0; i < degrees.size(); ++i) {
        Form f(prime, g, degrees[i]);
        const std::string where = "generators[" + std::to_string(i) + "]";
        try {
            for (const auto& term : gens[i]) {
                auto e = term.at(0).get<std::vector<int>>();
                auto c = term.at(1).get<std::uint64_t>();
                if (e.size() != g) throw ConfigError(where + ": exponent arity");
                Exponent ex;
                std::size_t total = 0;
                for (int v : e) {
                    if (v < 0) throw ConfigError(where + ": negative exponent");
                    ex.push_back(static_cast<std::uint8_t>(v));
                    total += static_cast<std::size_t>(v);
                }
                if (total != degrees[i]) throw ConfigError(where + ": exponent degree");
                if (c >= prime) throw ConfigError(where + ": coefficient not a canonical residue");
                f.coeffs()[f.table().index_of(ex)] += Fp(c, prime);
            }
        } catch (const json::exception&) {
            throw ConfigError(where + ": malformed term");
        }
        forms.push_back(std::move(f));
    }
    CurveFile out{make_curve(genus, prime, seed, std::move(forms)), {}};

    if (j.contains("points")) {
        try {
            for (const auto& row : j.at("points")) {
                auto coords = row.get<std::vector<std::uint64_t>>();
                if (coords.size() != g) throw ConfigError("points: wrong arity");
                Vec x;
                for (auto c : coords) {
                    if (c >= prime) throw ConfigError("points: coordinate not a canonical residue");
                    x.push_back(Fp(c, prime));
                }
                if (is_zero(x) || !out.curve.contains(x)) throw NotOnCurve("points: entry not on the curve");
                out.points.push_back(normalize_first_nonzero(x));
            }
        } catch (const json::exception&) {
            throw ConfigError("points: malformed");
        }
    }
    return out;
}

}  // namespace canon
