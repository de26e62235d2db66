#include "ghzsim/protocol_file.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <set>
#include <sstream>

namespace ghzsim {

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<std::string> tokenize(const std::string& line) {
    std::istringstream in(line);
    std::vector<std::string> out;
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

// key=value -> (key, value)
std::pair<std::string, std::string> split_kv(const std::string& tok, int line) {
    auto eq = tok.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == tok.size())
        throw ParseError(line, "expected key=value, got '" + tok + "'");
    return {tok.substr(0, eq), tok.substr(eq + 1)};
}

double parse_double(const std::string& s, int line) {
    try {
        size_t pos = 0;
        double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ParseError(line, "bad number '" + s + "'");
    }
}

int parse_int(const std::string& s, int line) {
    int v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size())
        throw ParseError(line, "bad integer '" + s + "'");
    return v;
}

double parse_angle_or_throw(const std::string& token, int line) {
    std::string t = token;
    double sign = 1.0;
    if (!t.empty() && t[0] == '-') {
        sign = -1.0;
        t = t.substr(1);
    }
    if (t == "pi") return sign * kPi;
    if (t == "pi/2") return sign * kPi / 2;
    if (t == "pi/4") return sign * kPi / 4;
    return parse_double(token, line);
}

int parse_sign(const std::string& v, int line) {
    if (v == "+" || v == "plus") return 1;
    if (v == "-" || v == "minus") return -1;
    throw ParseError(line, "bad sign '" + v + "'");
}

// Collects key=value pairs and rejects keys outside `allowed`.
std::map<std::string, std::string> kv_map(const std::vector<std::string>& toks, size_t first,
                                          const std::set<std::string>& allowed, int line) {
    std::map<std::string, std::string> kv;
    for (size_t i = first; i < toks.size(); ++i) {
        auto [k, v] = split_kv(toks[i], line);
        if (!allowed.count(k)) throw ParseError(line, "unknown key '" + k + "'");
        if (!kv.emplace(k, v).second) throw ParseError(line, "duplicate key '" + k + "'");
    }
    return kv;
}

std::string require(const std::map<std::string, std::string>& kv, const std::string& key,
                    int line) {
    auto it = kv.find(key);
    if (it == kv.end()) throw ParseError(line, "missing key '" + key + "'");
    return it->second;
}

}  // namespace

double parse_angle(const std::string& token) { return parse_angle_or_throw(token, 0); }

ParsedProtocol parse_protocol(const std::string& text) {
    ParsedProtocol proto;
    bool saw_family = false, saw_sign = false, in_steps = false;

    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = raw.substr(0, raw.find('#'));
        std::vector<std::string> toks = tokenize(line);
        if (toks.empty()) continue;

        const std::string& head = toks[0];
        if (head.find('=') != std::string::npos) {
            // Header line.
            if (in_steps) throw ParseError(lineno, "header line after first step");
            auto kv = kv_map(toks, 0, {"family", "sign", "cutoff", "tolerance"}, lineno);
            for (const auto& [k, v] : kv) {
                if (k == "family") {
                    if (v == "cascade") proto.header.family = AtomFamily::Cascade;
                    else if (v == "lambda") proto.header.family = AtomFamily::Lambda;
                    else throw ParseError(lineno, "bad family '" + v + "'");
                    saw_family = true;
                } else if (k == "sign") {
                    proto.header.sign = parse_sign(v, lineno);
                    saw_sign = true;
                } else if (k == "cutoff") {
                    proto.header.cutoff = parse_int(v, lineno);
                    if (proto.header.cutoff < 2) throw ParseError(lineno, "cutoff must be >= 2");
                } else {
                    proto.header.tolerance = parse_double(v, lineno);
                }
            }
            continue;
        }

        if (!saw_family || !saw_sign)
            throw ParseError(lineno, "steps before complete header (family, sign)");
        in_steps = true;

        if (head == "prepare_cavity") {
            auto kv = kv_map(toks, 1, {"sign"}, lineno);
            proto.steps.push_back(PrepareCavity{parse_sign(require(kv, "sign", lineno), lineno)});
        } else if (head == "ramsey") {
            auto kv = kv_map(toks, 1, {"atom", "named", "theta", "chi"}, lineno);
            RamseyRotate step{require(kv, "atom", lineno), "", {}};
            if (kv.count("named")) {
                if (kv.count("theta") || kv.count("chi"))
                    throw ParseError(lineno, "named= excludes theta=/chi=");
                step.named = kv.at("named");
                try {
                    named_rotation(step.named);
                } catch (const std::exception&) {
                    throw ParseError(lineno, "unknown named matrix '" + step.named + "'");
                }
            } else {
                step.params.theta = parse_angle_or_throw(require(kv, "theta", lineno), lineno);
                step.params.chi = parse_angle_or_throw(require(kv, "chi", lineno), lineno);
            }
            proto.steps.push_back(step);
        } else if (head == "dispersive") {
            auto kv = kv_map(toks, 1, {"atom", "phi"}, lineno);
            proto.steps.push_back(DispersiveInteract{
                require(kv, "atom", lineno),
                parse_angle_or_throw(require(kv, "phi", lineno), lineno)});
        } else if (head == "resonant") {
            auto kv = kv_map(toks, 1, {"atom", "gt"}, lineno);
            proto.steps.push_back(ResonantInteract{
                require(kv, "atom", lineno),
                parse_angle_or_throw(require(kv, "gt", lineno), lineno)});
        } else if (head == "detect") {
            auto kv = kv_map(toks, 1, {"atom"}, lineno);
            proto.steps.push_back(Detect{require(kv, "atom", lineno)});
        } else {
            throw ParseError(lineno, "unknown step '" + head + "'");
        }
    }
    if (!saw_family || !saw_sign) throw ParseError(lineno, "missing header (family, sign)");
    return proto;
}

namespace {

std::string format_angle(double v) {
    // Prefer the pi literals the grammar accepts, so round-trips are exact.
    for (auto [lit, val] : std::initializer_list<std::pair<const char*, double>>{
             {"pi", kPi}, {"pi/2", kPi / 2}, {"pi/4", kPi / 4}}) {
        if (v == val) return lit;
        if (v == -val) return std::string("-") + lit;
    }
    std::ostringstream out;
    out.precision(17);
    out << v;
    return out.str();
}

}  // namespace

std::string serialize_protocol(const ParsedProtocol& proto) {
    std::ostringstream out;
    out << "family=" << (proto.header.family == AtomFamily::Cascade ? "cascade" : "lambda")
        << " sign=" << (proto.header.sign > 0 ? "plus" : "minus")
        << " cutoff=" << proto.header.cutoff << " tolerance=" << proto.header.tolerance << "\n";
    for (const ProtocolStep& step : proto.steps) {
        if (auto* p = std::get_if<PrepareCavity>(&step)) {
            out << "prepare_cavity sign=" << (p->sign > 0 ? "+" : "-") << "\n";
        } else if (auto* r = std::get_if<RamseyRotate>(&step)) {
            out << "ramsey atom=" << r->atom;
            if (!r->named.empty()) {
                out << " named=" << r->named;
            } else {
                out << " theta=" << format_angle(r->params.theta)
                    << " chi=" << format_angle(r->params.chi);
            }
            out << "\n";
        } else if (auto* d = std::get_if<DispersiveInteract>(&step)) {
            out << "dispersive atom=" << d->atom << " phi=" << format_angle(d->phi) << "\n";
        } else if (auto* i = std::get_if<ResonantInteract>(&step)) {
            out << "resonant atom=" << i->atom << " gt=" << format_angle(i->gt) << "\n";
        } else {
            out << "detect atom=" << std::get<Detect>(step).atom << "\n";
        }
    }
    return out.str();
}

}  // namespace ghzsim
