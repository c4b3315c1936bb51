#include "slabio/stack.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace slabio {

using nlohmann::json;

namespace {

cplx eval_dl(const DrudeLorentzModel& m, double w) {
    cplx eps = m.eps_inf;
    for (const auto& o : m.oscillators) {
        const double w02 = o.omega0 * o.omega0;
        const cplx den(w02 - w * w, -o.gamma * w);
        if (den == cplx(0.0))
            throw DomainError("drude-lorentz oscillator without damping evaluated at its resonance");
        eps += o.strength * w02 / den;
    }
    return eps;
}

cplx eval_tab(const TabulatedModel& m, double w) {
    const auto& x = m.omega;
    if (w < x.front() || w > x.back()) {
        std::ostringstream os;
        os << "omega " << w << " rad/s outside tabulated range [" << x.front() << ", " << x.back() << "]";
        throw DomainError(os.str());
    }
    auto it = std::upper_bound(x.begin(), x.end(), w);
    std::size_t i = it == x.end() ? x.size() - 1 : static_cast<std::size_t>(it - x.begin());
    if (i == 0) i = 1;
    const double f = (w - x[i - 1]) / (x[i] - x[i - 1]);
    return m.eps[i - 1] + f * (m.eps[i] - m.eps[i - 1]);
}

}  // namespace

cplx evaluate(const PermittivityModel& m, double omega) {
    if (!(omega > 0) || !std::isfinite(omega)) throw DomainError("omega must be positive and finite");
    return std::visit(
        [&](const auto& v) -> cplx {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, ConstantModel>) return v.eps;
            else if constexpr (std::is_same_v<T, DrudeLorentzModel>) return eval_dl(v, omega);
            else return eval_tab(v, omega);
        },
        m);
}

void validate(const PermittivityModel& m, const std::string& where) {
    std::visit(
        [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, ConstantModel>) {
                if (!std::isfinite(v.eps.real()) || !std::isfinite(v.eps.imag()))
                    throw ConfigError(where + ": non-finite permittivity");
                if (v.eps.imag() < 0) throw PassivityError(where + ": Im eps < 0 (gain medium)");
            } else if constexpr (std::is_same_v<T, DrudeLorentzModel>) {
                if (!std::isfinite(v.eps_inf)) throw ConfigError(where + ": non-finite eps_inf");
                // Im eps = sum s w0^2 gamma w / |...|^2, so s >= 0 and gamma >= 0 is exactly passivity.
                for (const auto& o : v.oscillators) {
                    if (!std::isfinite(o.strength) || !std::isfinite(o.omega0) || !std::isfinite(o.gamma))
                        throw ConfigError(where + ": non-finite oscillator parameter");
                    if (o.omega0 < 0) throw ConfigError(where + ": negative resonance frequency");
                    if (o.strength < 0 || o.gamma < 0)
                        throw PassivityError(where + ": oscillator with negative strength or damping");
                }
            } else {
                if (v.omega.size() < 2 || v.omega.size() != v.eps.size())
                    throw ConfigError(where + ": tabulated model needs at least two samples");
                for (std::size_t i = 0; i < v.omega.size(); ++i) {
                    if (!(v.omega[i] > 0) || !std::isfinite(v.omega[i]))
                        throw ConfigError(where + ": sample frequencies must be positive");
                    if (i > 0 && !(v.omega[i] > v.omega[i - 1]))
                        throw ConfigError(where + ": sample frequencies must be strictly increasing");
                    if (!std::isfinite(v.eps[i].real()) || !std::isfinite(v.eps[i].imag()))
                        throw ConfigError(where + ": non-finite sample");
                    // Linear interpolation keeps Im eps >= 0 between non-negative samples.
                    if (v.eps[i].imag() < 0)
                        throw PassivityError(where + ": tabulated sample with Im eps < 0");
                }
            }
        },
        m);
}

double Stack::thickness(int j) const {
    if (j < 0 || j > n()) throw DomainError("region index out of range");
    if (j == 0 || j == n()) return 0.0;
    return layers[static_cast<std::size_t>(j - 1)].thickness;
}

const PermittivityModel& Stack::material(int j) const {
    if (j < 0 || j > n()) throw DomainError("region index out of range");
    if (j == 0) return medium0;
    if (j == n()) return mediumN;
    return layers[static_cast<std::size_t>(j - 1)].material;
}

Stack make_stack(PermittivityModel medium0, std::vector<Layer> layers, PermittivityModel mediumN,
                 PConvention conv) {
    validate(medium0, "medium0");
    validate(mediumN, "mediumN");
    for (std::size_t i = 0; i < layers.size(); ++i) {
        const std::string where = "layers[" + std::to_string(i) + "]";
        const double d = layers[i].thickness;
        if (!(d > 0) || !std::isfinite(d)) throw ConfigError(where + ": thickness must be positive and finite");
        validate(layers[i].material, where);
    }
    return Stack{std::move(medium0), std::move(layers), std::move(mediumN), conv};
}

cplx epsilon(const Stack& s, int j, double omega) { return evaluate(s.material(j), omega); }

// ---- config text ----

namespace {

double num(const json& o, const char* key, const std::string& path) {
    if (!o.is_object() || !o.contains(key)) throw ConfigError(path + ": missing key '" + key + "'");
    const auto& v = o.at(key);
    if (!v.is_number()) throw ConfigError(path + "." + key + ": expected a number");
    return v.get<double>();
}

PermittivityModel parse_material(const json& o, const std::string& path) {
    if (!o.is_object()) throw ConfigError(path + ": expected an object");
    if (!o.contains("model") || !o["model"].is_string()) throw ConfigError(path + ": missing string key 'model'");
    const auto model = o["model"].get<std::string>();
    if (model == "constant") {
        const double im = o.contains("eps_im") ? num(o, "eps_im", path) : 0.0;
        return ConstantModel{cplx(num(o, "eps_re", path), im)};
    }
    if (model == "drude-lorentz") {
        DrudeLorentzModel m;
        m.eps_inf = o.contains("eps_inf") ? num(o, "eps_inf", path) : 1.0;
        if (o.contains("oscillators")) {
            const auto& arr = o["oscillators"];
            if (!arr.is_array()) throw ConfigError(path + ".oscillators: expected a list");
            for (std::size_t i = 0; i < arr.size(); ++i) {
                const auto p = path + ".oscillators[" + std::to_string(i) + "]";
                m.oscillators.push_back({num(arr[i], "strength", p), num(arr[i], "omega0", p), num(arr[i], "gamma", p)});
            }
        }
        return m;
    }
    if (model == "tabulated") {
        TabulatedModel m;
        if (!o.contains("samples") || !o["samples"].is_array())
            throw ConfigError(path + ": tabulated model needs a 'samples' list of [omega, eps_re, eps_im]");
        const auto& arr = o["samples"];
        for (std::size_t i = 0; i < arr.size(); ++i) {
            const auto& row = arr[i];
            if (!row.is_array() || row.size() != 3 || !row[0].is_number() || !row[1].is_number() || !row[2].is_number())
                throw ConfigError(path + ".samples[" + std::to_string(i) + "]: expected [omega, eps_re, eps_im]");
            m.omega.push_back(row[0].get<double>());
            m.eps.emplace_back(row[1].get<double>(), row[2].get<double>());
        }
        return m;
    }
    throw ConfigError(path + ": unknown model '" + model + "'");
}

json dump_material(const PermittivityModel& m) {
    return std::visit(
        [](const auto& v) -> json {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, ConstantModel>) {
                return {{"model", "constant"}, {"eps_re", v.eps.real()}, {"eps_im", v.eps.imag()}};
            } else if constexpr (std::is_same_v<T, DrudeLorentzModel>) {
                json osc = json::array();
                for (const auto& o : v.oscillators)
                    osc.push_back({{"strength", o.strength}, {"omega0", o.omega0}, {"gamma", o.gamma}});
                return {{"model", "drude-lorentz"}, {"eps_inf", v.eps_inf}, {"oscillators", osc}};
            } else {
                json rows = json::array();
                for (std::size_t i = 0; i < v.omega.size(); ++i)
                    rows.push_back({v.omega[i], v.eps[i].real(), v.eps[i].imag()});
                return {{"model", "tabulated"}, {"samples", rows}};
            }
        },
        m);
}

}  // namespace

Stack load_stack(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text, nullptr, true, true);
    } catch (const json::parse_error& e) {
        // Translate the byte offset into a line number for the message.
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw ConfigError("stack config parse error at line " + std::to_string(line) + ", column " +
                          std::to_string(col) + ": " + e.what());
    }
    if (!doc.is_object()) throw ConfigError("stack config: top level must be an object");
    for (const auto& [key, _] : doc.items()) {
        if (key != "medium0" && key != "mediumN" && key != "layers" && key != "p_transmission_convention" &&
            key != "comment")
            throw ConfigError("stack config: unknown key '" + key + "'");
    }
    if (!doc.contains("medium0")) throw ConfigError("stack config: missing key 'medium0'");
    if (!doc.contains("mediumN")) throw ConfigError("stack config: missing key 'mediumN'");
    auto m0 = parse_material(doc["medium0"], "medium0");
    auto mn = parse_material(doc["mediumN"], "mediumN");
    std::vector<Layer> layers;
    if (doc.contains("layers")) {
        const auto& arr = doc["layers"];
        if (!arr.is_array()) throw ConfigError("layers: expected a list");
        for (std::size_t i = 0; i < arr.size(); ++i) {
            const auto path = "layers[" + std::to_string(i) + "]";
            if (!arr[i].contains("material")) throw ConfigError(path + ": missing key 'material'");
            layers.push_back({num(arr[i], "thickness_m", path), parse_material(arr[i]["material"], path + ".material")});
        }
    }
    PConvention conv = PConvention::field;
    if (doc.contains("p_transmission_convention")) {
        const auto& v = doc["p_transmission_convention"];
        if (v == "field") conv = PConvention::field;
        else if (v == "magnetic") conv = PConvention::magnetic;
        else throw ConfigError("p_transmission_convention: expected \"field\" or \"magnetic\"");
    }
    return make_stack(std::move(m0), std::move(layers), std::move(mn), conv);
}

Stack load_stack_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open stack file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return load_stack(ss.str());
}

std::string serialize_stack(const Stack& s) {
    json doc;
    doc["medium0"] = dump_material(s.medium0);
    doc["layers"] = json::array();
    for (const auto& l : s.layers) doc["layers"].push_back({{"thickness_m", l.thickness}, {"material", dump_material(l.material)}});
    doc["mediumN"] = dump_material(s.mediumN);
    if (s.p_convention == PConvention::magnetic) doc["p_transmission_convention"] = "magnetic";
    return doc.dump(2) + "\n";
}

}  // namespace slabio
