#include "srheat/frame_parse.hpp"

#include <cctype>
#include <charconv>
#include <json.hpp>

namespace srheat {

namespace {

constexpr int kMaxExponent = 64;

struct PolyParser {
    const std::string& src;
    int d;
    std::size_t pos = 0;

    [[noreturn]] void fail(const std::string& msg, std::size_t at) const {
        int line = 1, col = 1;
        for (std::size_t i = 0; i < at && i < src.size(); ++i) {
            if (src[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw parse_error("line " + std::to_string(line) + ", column " + std::to_string(col) +
                          ": " + msg);
    }

    void skip_ws() {
        while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos]))) ++pos;
    }

    char peek() {
        skip_ws();
        return pos < src.size() ? src[pos] : '\0';
    }

    bool eat(char c) {
        skip_ws();
        if (pos < src.size() && src[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    int parse_uint(const char* what) {
        skip_ws();
        if (peek() == '-') fail(std::string(what) + " must be a nonnegative integer", pos);
        std::size_t start = pos;
        long value = 0;
        while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos]))) {
            value = value * 10 + (src[pos] - '0');
            if (value > 1000000) fail(std::string(what) + " is out of range", start);
            ++pos;
        }
        if (pos == start) fail(std::string("expected ") + what, pos);
        return static_cast<int>(value);
    }

    Polynomial parse_poly() {
        Polynomial p = parse_term();
        while (true) {
            if (eat('+')) {
                p += parse_term();
            } else if (eat('-')) {
                p -= parse_term();
            } else {
                return p;
            }
        }
    }

    Polynomial parse_term() {
        Polynomial p = parse_factor();
        while (eat('*')) p = p * parse_factor();
        return p;
    }

    Polynomial parse_factor() {
        skip_ws();
        if (eat('-')) {
            Polynomial p = parse_factor();
            p *= -1.0;
            return p;
        }
        Polynomial base = parse_primary();
        while (eat('^')) {
            std::size_t at = pos;
            int e = parse_uint("exponent");
            if (e > kMaxExponent) fail("exponent is out of range", at);
            Polynomial power = Polynomial::constant(d, 1.0);
            for (int i = 0; i < e; ++i) power = power * base;
            base = std::move(power);
        }
        return base;
    }

    Polynomial parse_primary() {
        skip_ws();
        if (pos >= src.size()) fail("unexpected end of input", pos);
        char c = src[pos];
        if (c == '(') {
            ++pos;
            Polynomial p = parse_poly();
            if (!eat(')')) fail("expected ')'", pos);
            return p;
        }
        if (c == 'x') {
            std::size_t at = pos;
            ++pos;
            int idx = parse_uint("variable index");
            if (idx < 1 || idx > d) {
                fail("unknown variable x" + std::to_string(idx) + " (expected x1..x" +
                         std::to_string(d) + ")",
                     at);
            }
            return Polynomial::variable(d, idx - 1);
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            double value = 0.0;
            const char* begin = src.data() + pos;
            const char* end = src.data() + src.size();
            auto [ptr, ec] = std::from_chars(begin, end, value);
            if (ec != std::errc{}) fail("invalid number", pos);
            pos += static_cast<std::size_t>(ptr - begin);
            return Polynomial::constant(d, value);
        }
        fail("expected a number, a variable, or '('", pos);
    }
};

nlohmann::json parse_json_or_fail(const std::string& text, const char* what) {
    nlohmann::json doc = nlohmann::json::parse(text, nullptr, false);
    if (doc.is_discarded()) throw parse_error(std::string(what) + ": not valid JSON");
    return doc;
}

}  // namespace

Polynomial parse_polynomial(const std::string& src, int d) {
    if (d < 1) throw parse_error("dimension must be positive");
    PolyParser parser{src, d};
    parser.skip_ws();
    if (parser.pos >= src.size()) parser.fail("empty expression", 0);
    Polynomial p = parser.parse_poly();
    parser.skip_ws();
    if (parser.pos < src.size()) parser.fail("unexpected trailing input", parser.pos);
    return p;
}

FrameSpec parse_frame_spec(const std::string& json_text) {
    nlohmann::json doc = parse_json_or_fail(json_text, "frame document");
    if (!doc.is_object()) throw parse_error("frame document: expected a JSON object");
    for (const auto& [key, value] : doc.items()) {
        (void)value;
        if (key != "d" && key != "n" && key != "fields" && key != "labels" && key != "points") {
            throw parse_error("frame document: unknown key \"" + key + "\"");
        }
    }
    if (!doc.contains("d") || !doc["d"].is_number_integer()) {
        throw parse_error("frame document: missing integer \"d\"");
    }
    if (!doc.contains("n") || !doc["n"].is_number_integer()) {
        throw parse_error("frame document: missing integer \"n\"");
    }
    FrameSpec spec;
    spec.d = doc["d"].get<int>();
    spec.n = doc["n"].get<int>();
    if (spec.d < 1) throw parse_error("frame document: d must be at least 1");
    if (spec.n < 1) throw parse_error("frame document: n must be at least 1");
    if (!doc.contains("fields") || !doc["fields"].is_array()) {
        throw parse_error("frame document: missing array \"fields\"");
    }
    if (doc["fields"].size() != static_cast<std::size_t>(spec.n)) {
        throw parse_error("frame document: expected " + std::to_string(spec.n) +
                          " fields, found " + std::to_string(doc["fields"].size()));
    }
    for (std::size_t i = 0; i < doc["fields"].size(); ++i) {
        const auto& field = doc["fields"][i];
        if (!field.is_array() || field.size() != static_cast<std::size_t>(spec.d)) {
            throw parse_error("frame document: field " + std::to_string(i + 1) + " needs " +
                              std::to_string(spec.d) + " component expressions");
        }
        std::vector<std::string> comps;
        for (const auto& comp : field) {
            if (!comp.is_string()) {
                throw parse_error("frame document: field " + std::to_string(i + 1) +
                                  " has a non-string component");
            }
            comps.push_back(comp.get<std::string>());
        }
        spec.fields.push_back(std::move(comps));
    }
    if (doc.contains("labels")) {
        if (!doc["labels"].is_array() || doc["labels"].size() != static_cast<std::size_t>(spec.n)) {
            throw parse_error("frame document: labels must list one name per field");
        }
        for (const auto& label : doc["labels"]) {
            if (!label.is_string()) throw parse_error("frame document: labels must be strings");
            spec.labels.push_back(label.get<std::string>());
        }
    }
    if (doc.contains("points")) {
        if (!doc["points"].is_array()) throw parse_error("frame document: points must be an array");
        for (std::size_t i = 0; i < doc["points"].size(); ++i) {
            const auto& pt = doc["points"][i];
            if (!pt.is_array() || pt.size() != static_cast<std::size_t>(spec.d)) {
                throw parse_error("frame document: point " + std::to_string(i + 1) + " needs " +
                                  std::to_string(spec.d) + " coordinates");
            }
            std::vector<double> coords;
            for (const auto& v : pt) {
                if (!v.is_number()) {
                    throw parse_error("frame document: point " + std::to_string(i + 1) +
                                      " has a non-numeric coordinate");
                }
                coords.push_back(v.get<double>());
            }
            spec.points.push_back(std::move(coords));
        }
    }
    return spec;
}

std::string frame_spec_to_json(const FrameSpec& spec) {
    nlohmann::json doc;
    doc["d"] = spec.d;
    doc["n"] = spec.n;
    doc["fields"] = spec.fields;
    if (!spec.labels.empty()) doc["labels"] = spec.labels;
    if (!spec.points.empty()) doc["points"] = spec.points;
    return doc.dump(2) + "\n";
}

Frame build_frame(const FrameSpec& spec) {
    if (spec.fields.size() != static_cast<std::size_t>(spec.n)) {
        throw parse_error("frame document: expected " + std::to_string(spec.n) + " fields");
    }
    std::vector<PolyVectorField> fields;
    std::string problems;
    for (std::size_t i = 0; i < spec.fields.size(); ++i) {
        if (spec.fields[i].size() != static_cast<std::size_t>(spec.d)) {
            problems += "field " + std::to_string(i + 1) + ": needs " + std::to_string(spec.d) +
                        " components\n";
            continue;
        }
        PolyVectorField v;
        for (std::size_t j = 0; j < spec.fields[i].size(); ++j) {
            try {
                v.comp.push_back(parse_polynomial(spec.fields[i][j], spec.d));
            } catch (const parse_error& e) {
                problems += "field " + std::to_string(i + 1) + ", component " +
                            std::to_string(j + 1) + ": " + e.what() + "\n";
            }
        }
        fields.push_back(std::move(v));
    }
    if (!problems.empty()) {
        problems.pop_back();
        throw parse_error(problems);
    }
    return Frame(spec.d, std::move(fields));
}

FrameSpec frame_to_spec(const Frame& frame) {
    FrameSpec spec;
    spec.d = frame.dim();
    spec.n = frame.count();
    for (int i = 0; i < frame.count(); ++i) {
        std::vector<std::string> comps;
        for (const auto& p : frame.field(i).comp) comps.push_back(p.to_string());
        spec.fields.push_back(std::move(comps));
    }
    return spec;
}

}  // namespace srheat
