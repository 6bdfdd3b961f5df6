#include "olab/io.hpp"

#include "olab/error.hpp"

#include <cctype>
#include <fstream>
#include <optional>
#include <sstream>

namespace olab {

namespace {

std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b])))
        ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1])))
        --e;
    return std::string(s.substr(b, e - b));
}

} // namespace

Origami parse_origami(std::string_view text) {
    std::string name;
    std::optional<int> degree;
    std::optional<std::string> h_text, v_text;
    std::string* current = nullptr;

    std::istringstream in{std::string(text)};
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const std::string line = trim(raw);
        if (line.empty())
            continue;
        if (line.front() == '#') {
            if (name.empty() && !h_text && !v_text)
                name = trim(std::string_view(line).substr(1));
            continue;
        }
        const auto eq = line.find('=');
        if (eq != std::string::npos) {
            const std::string key = trim(std::string_view(line).substr(0, eq));
            const std::string rest = trim(std::string_view(line).substr(eq + 1));
            if (key == "n") {
                try {
                    std::size_t used = 0;
                    int n = std::stoi(rest, &used);
                    if (used != rest.size() || n < 1)
                        throw std::invalid_argument("n");
                    degree = n;
                } catch (const std::exception&) {
                    throw ParseError("line " + std::to_string(line_no) +
                                     ": bad degree '" + rest + "'");
                }
                current = nullptr;
            } else if (key == "h" || key == "v") {
                auto& slot = key == "h" ? h_text : v_text;
                if (slot)
                    throw ParseError("line " + std::to_string(line_no) +
                                     ": duplicate '" + key + "'");
                slot = rest;
                current = &*slot;
            } else {
                throw ParseError("line " + std::to_string(line_no) +
                                 ": unknown key '" + key + "'");
            }
            continue;
        }
        if (line.front() == '(' && current) {
            *current += line;
            continue;
        }
        throw ParseError("line " + std::to_string(line_no) + ": unexpected text");
    }
    if (!h_text || !v_text)
        throw ParseError("origami text needs both 'h =' and 'v =' lines");

    Permutation h = parse_cycles(*h_text, degree);
    Permutation v = parse_cycles(*v_text, degree);
    const int n = std::max(h.degree(), v.degree());
    if (h.degree() < n)
        h = parse_cycles(*h_text, n);
    if (v.degree() < n)
        v = parse_cycles(*v_text, n);
    return Origami(std::move(h), std::move(v), name);
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f)
        throw DomainError("cannot open " + path.string());
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

Origami read_origami(const std::filesystem::path& path) {
    Origami o = parse_origami(read_file(path));
    if (o.label().empty())
        o.set_label(path.stem().string());
    return o;
}

std::string format_origami(const Origami& o) {
    std::ostringstream os;
    if (!o.label().empty())
        os << "# " << o.label() << '\n';
    os << "n = " << o.degree() << '\n';
    os << "h = " << render_cycles(o.h()) << '\n';
    os << "v = " << render_cycles(o.v()) << '\n';
    return os.str();
}

json to_json(const Origami& o) {
    return json{{"degree", o.degree()},
                {"h_images", o.h().images()},
                {"v_images", o.v().images()},
                {"label", o.label()}};
}

Origami origami_from_json(const json& j) {
    try {
        auto h = Permutation::from_images(j.at("h_images").get<std::vector<int>>());
        auto v = Permutation::from_images(j.at("v_images").get<std::vector<int>>());
        if (j.contains("degree") && j.at("degree").get<int>() != h.degree())
            throw ParseError("origami json: degree does not match images");
        return Origami(std::move(h), std::move(v), j.value("label", std::string{}));
    } catch (const json::exception& e) {
        throw ParseError(std::string("origami json: ") + e.what());
    }
}

json to_json(const IntMatrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) {
            const Integer& x = m(i, j);
            if (x.fits_slong_p())
                row.push_back(x.get_si());
            else
                row.push_back(x.get_str());
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

IntMatrix int_matrix_from_json(const json& j) {
    try {
        if (!j.is_array() || j.empty())
            throw ParseError("matrix json: expected a non-empty array of rows");
        const std::size_t rows = j.size(), cols = j.at(0).size();
        IntMatrix m(rows, cols);
        for (std::size_t i = 0; i < rows; ++i) {
            if (j.at(i).size() != cols)
                throw ParseError("matrix json: ragged rows");
            for (std::size_t k = 0; k < cols; ++k) {
                const auto& x = j.at(i).at(k);
                if (x.is_number_integer())
                    m(i, k) = x.get<long>();
                else if (x.is_string())
                    m(i, k) = Integer(x.get<std::string>());
                else
                    throw ParseError("matrix json: non-integer entry");
            }
        }
        return m;
    } catch (const json::exception& e) {
        throw ParseError(std::string("matrix json: ") + e.what());
    } catch (const std::invalid_argument&) {
        throw ParseError("matrix json: bad integer string");
    }
}

json to_json(const Rational& q) {
    auto part = [](const Integer& x) -> json {
        if (x.fits_slong_p())
            return x.get_si();
        return x.get_str();
    };
    return json{{"num", part(q.get_num())}, {"den", part(q.get_den())}};
}

} // namespace olab
