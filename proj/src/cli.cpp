#include "olab/cli.hpp"

#include "olab/covers.hpp"
#include "olab/error.hpp"
#include "olab/galois.hpp"
#include "olab/homology.hpp"
#include "olab/io.hpp"
#include "olab/lyapunov.hpp"
#include "olab/orbit.hpp"
#include "olab/simplicity.hpp"
#include "olab/spectral.hpp"
#include "olab/spin.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iomanip>
#include <sstream>

namespace olab {

namespace {

struct Options {
    bool json = false;
    int threads = 1;
    std::string file;
    std::string word;
    std::string subspace = "h1_zero";
    std::string form_file;
    std::string output;
    int depth = 12;
    int steps = 10000;
    int trials = 20;
    std::uint64_t seed = 0;
    std::string construction;
    std::string group = "quaternion";
    std::string wrap;
    std::string wh, wv;
    long k_from = 3, k_to = 3;
    std::vector<long> traces;
};

std::string decimal(const Rational& q) {
    std::ostringstream s;
    s << std::setprecision(12) << q.get_d();
    return s.str();
}

std::string yes_no(bool b) { return b ? "true" : "false"; }

void emit(std::ostream& out, const json& j) { out << j.dump(2) << "\n"; }

IntMatrix read_matrix(const std::string& path) {
    const std::string text = read_file(path);
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first == std::string::npos)
        throw ParseError(path + ": empty matrix file");
    if (text[first] == '[') {
        try {
            return int_matrix_from_json(json::parse(text));
        } catch (const json::exception& e) {
            throw ParseError(path + ": " + e.what());
        }
    }
    std::vector<IntVector> rows;
    std::istringstream lines(text);
    std::string line;
    while (std::getline(lines, line)) {
        std::istringstream cells(line);
        IntVector row;
        std::string cell;
        while (cells >> cell) {
            Integer x;
            if (x.set_str(cell, 10) != 0)
                throw ParseError(path + ": '" + cell + "' is not an integer");
            row.push_back(x);
        }
        if (!row.empty())
            rows.push_back(std::move(row));
    }
    for (const auto& r : rows)
        if (r.size() != rows.front().size())
            throw ParseError(path + ": ragged rows");
    IntMatrix m(rows.size(), rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j)
            m(i, j) = rows[i][j];
    return m;
}

std::vector<int> element_list(const FiniteGroupTable& g, const std::string& text, int n) {
    std::vector<int> out;
    std::istringstream s(text);
    std::string item;
    while (std::getline(s, item, ','))
        out.push_back(g.find(item));
    if (out.size() == 1)
        out.assign(static_cast<std::size_t>(n), out.front());
    if (static_cast<int>(out.size()) != n)
        throw DomainError("cocycle needs one group element per square or a single element");
    return out;
}

FiniteGroupTable group_by_name(const std::string& name) {
    if (name == "quaternion")
        return quaternion_group();
    if (name.rfind("cyclic", 0) == 0) {
        try {
            return cyclic_group(std::stoi(name.substr(6)));
        } catch (const std::logic_error&) {
        }
    }
    throw DomainError("unknown group '" + name + "' (quaternion or cyclicN)");
}

int cmd_info(const Options& o, std::ostream& out) {
    const Origami x = read_origami(o.file);
    const Stratum s = stratum(x);
    const bool reduced = is_reduced(x);
    const auto aut = automorphisms(x);
    if (o.json) {
        emit(out, {{"label", x.label()},
                   {"degree", x.degree()},
                   {"genus", s.genus},
                   {"stratum", s.to_string()},
                   {"reduced", reduced},
                   {"automorphisms", aut.size()},
                   {"origami", to_json(x)}});
        return 0;
    }
    out << "label: " << x.label() << "\n"
        << "degree: " << x.degree() << "\n"
        << "genus: " << s.genus << "\n"
        << "stratum: " << s.to_string() << "\n"
        << "reduced: " << yes_no(reduced) << "\n"
        << "automorphisms: " << aut.size() << "\n";
    return 0;
}

int cmd_orbit(const Options& o, std::ostream& out) {
    const Origami x = read_origami(o.file);
    const OrbitGraph g = sl2z_orbit(x, o.threads);
    if (o.json) {
        emit(out, to_json(g));
        return 0;
    }
    out << "orbit size: " << g.size() << "\n";
    const auto words = g.tree_words();
    for (int n = 0; n < g.size(); ++n)
        out << n << " [" << words[static_cast<std::size_t>(n)].to_string() << "] "
            << "h = " << render_cycles(g.nodes[static_cast<std::size_t>(n)].h())
            << "  v = " << render_cycles(g.nodes[static_cast<std::size_t>(n)].v()) << "\n";
    return 0;
}

int cmd_veech(const Options& o, std::ostream& out) {
    const Origami x = read_origami(o.file);
    const int index = veech_index(x);
    const auto gens = veech_generators(x);
    if (o.json) {
        json g = json::array();
        for (const auto& w : gens)
            g.push_back({{"word", w.to_string()}, {"matrix", to_string(w.matrix())}});
        emit(out, {{"index", index}, {"generators", g}});
        return 0;
    }
    out << "index: " << index << "\n";
    for (const auto& w : gens)
        out << w.to_string() << "  " << to_string(w.matrix()) << "\n";
    return 0;
}

int cmd_spin(const Options& o, std::ostream& out) {
    const Origami x = read_origami(o.file);
    const int parity = spin_parity(x);
    if (o.json)
        emit(out, {{"stratum", stratum(x).to_string()}, {"parity", parity}});
    else
        out << "parity: " << parity << "\n";
    return 0;
}

int cmd_component(const Options& o, std::ostream& out) {
    const Origami x = read_origami(o.file);
    const ComponentReport r = component(x);
    if (o.json) {
        json j{{"stratum", r.stratum.to_string()}, {"component", to_string(r.tag)}};
        j["parity"] = r.parity ? json(*r.parity) : json(nullptr);
        j["hyperelliptic"] = r.hyperelliptic ? json(*r.hyperelliptic) : json(nullptr);
        j["note"] = r.note;
        emit(out, j);
        return 0;
    }
    out << "stratum: " << r.stratum.to_string() << "\n"
        << "component: " << to_string(r.tag) << "\n";
    if (r.parity)
        out << "parity: " << *r.parity << "\n";
    if (!r.note.empty())
        out << "note: " << r.note << "\n";
    return 0;
}

int cmd_kz(const Options& o, std::ostream& out) {
    const Origami x = read_origami(o.file);
    const Sl2zWord w = Sl2zWord::parse(o.word);
    const KzCocycle kz(x, o.threads);
    const CocycleMatrix cm = kz.kz_matrix(w);
    const HomologyBasis& b = kz.basis(kz.basepoint());
    IntMatrix m = cm.matrix;
    switch (parse_subspace(o.subspace)) {
    case Subspace::Full:
        break;
    case Subspace::H1Zero:
        m = restrict(cm, tautological_split(b).zero);
        break;
    case Subspace::W: {
        const Origami& base = kz.graph().nodes[static_cast<std::size_t>(kz.basepoint())];
        m = restrict(cm, isotypical_W(b, base, central_involution(base)));
        break;
    }
    }
    const IntVector cp = charpoly(m);
    if (o.json) {
        json j{{"word", w.to_string()},
               {"linear_part", to_string(w.matrix())},
               {"subspace", o.subspace},
               {"matrix", to_json(m)},
               {"charpoly", format_polynomial(cp)},
               {"ambiguity", cm.ambiguity.size()}};
        emit(out, j);
        return 0;
    }
    out << "word: " << w.to_string() << "  linear part " << to_string(w.matrix()) << "\n"
        << "subspace: " << o.subspace << " (dimension " << m.rows() << ")\n"
        << format_matrix(m) << "charpoly: " << format_polynomial(cp) << "\n";
    if (!cm.ambiguity.empty())
        out << "note: defined up to " << cm.ambiguity.size() + 1
            << " automorphism matrices\n";
    return 0;
}

int cmd_galois(const Options& o, std::ostream& out) {
    const IntMatrix m = read_matrix(o.file);
    std::optional<IntMatrix> form;
    if (!o.form_file.empty())
        form = read_matrix(o.form_file);
    if (m.rows() == 2 && m.cols() == 2) {
        const bool p = is_galois_pinching_sl2(m);
        if (o.json)
            emit(out, {{"size", 2}, {"pinching", p}});
        else
            out << "pinching: " << yes_no(p) << "\n";
        return 0;
    }
    const PinchingReport r = is_galois_pinching_sp4(m, form);
    const ReciprocalQuartic& q = *r.quartic;
    if (o.json) {
        emit(out, {{"size", 4},
                   {"pinching", r.pinching},
                   {"charpoly", format_polynomial(r.charpoly)},
                   {"a", q.a.get_str()},
                   {"b", q.b.get_str()},
                   {"delta1", q.delta1.get_str()},
                   {"delta2", q.delta2.get_str()},
                   {"delta3", q.delta3.get_str()},
                   {"irreducible", r.irreducible},
                   {"real_simple_roots", r.real_simple_roots},
                   {"squares_excluded", r.squares_excluded}});
        return 0;
    }
    out << "charpoly: " << format_polynomial(r.charpoly) << "\n"
        << "a = " << q.a << ", b = " << q.b << "\n"
        << "delta1 = " << q.delta1 << ", delta2 = " << q.delta2 << ", delta3 = " << q.delta3
        << "\n"
        << "irreducible: " << yes_no(r.irreducible) << "\n"
        << "real simple roots: " << yes_no(r.real_simple_roots) << "\n"
        << "non-square discriminants: " << yes_no(r.squares_excluded) << "\n"
        << "pinching: " << yes_no(r.pinching) << "\n";
    return 0;
}

int cmd_simplicity(const Options& o, std::ostream& out) {
    const Origami x = read_origami(o.file);
    SimplicitySearch s;
    if (!o.word.empty()) {
        s.certificate = certify_with_word(x, Sl2zWord::parse(o.word));
        if (!s.certificate) {
            emit(out, {{"found", false}, {"word", o.word}, {"note", "word is not a certificate"}});
            return 1;
        }
    } else {
        s = certify_simplicity(x, o.depth, o.threads);
    }
    if (!s.certificate) {
        emit(out, {{"found", false},
                   {"explored_depth", s.explored_depth},
                   {"loops_checked", s.loops_checked},
                   {"note", "no certificate found; this is not a disproof"}});
        return 0;
    }
    const json cert = to_json(*s.certificate);
    if (!o.output.empty()) {
        std::ofstream f(o.output);
        if (!f)
            throw DomainError("cannot write " + o.output);
        f << cert.dump(2) << "\n";
    }
    emit(out, cert);
    return 0;
}

int cmd_ekz(const Options& o, std::ostream& out) {
    const Origami x = read_origami(o.file);
    const EkzReport r = ekz_sum(x, o.threads);
    if (o.json) {
        emit(out, to_json(r));
        return 0;
    }
    out << "stratum: " << r.stratum.to_string() << "\n"
        << "orbit: " << r.orbit_size << "\n"
        << "combinatorial: " << r.combinatorial << " (" << decimal(r.combinatorial) << ")\n"
        << "cylinder: " << r.cylinder << " (" << decimal(r.cylinder) << ")\n"
        << "total: " << r.total << " (" << decimal(r.total) << ")\n";
    return 0;
}

int cmd_mc(const Options& o, std::ostream& out) {
    const Origami x = read_origami(o.file);
    const McEstimate e =
        mc_exponents(x, parse_subspace(o.subspace), o.steps, o.trials, o.seed, o.threads);
    if (o.json) {
        emit(out, to_json(e));
        return 0;
    }
    out << "subspace: " << to_string(e.subspace) << "  steps " << e.steps << "  trials "
        << e.trials << "  seed " << e.seed << "\n";
    out << std::setprecision(6);
    for (std::size_t i = 0; i < e.exponents.size(); ++i)
        out << e.exponents[i] << " +- " << e.std_errors[i] << "\n";
    if (!e.note.empty())
        out << "note: " << e.note << "\n";
    return 0;
}

int cmd_cover(const Options& o, std::ostream& out) {
    Origami c;
    if (o.construction == "ew") {
        c = eierlegende_wollmilchsau();
    } else if (o.construction == "ltilde") {
        c = quaternionic_l3();
    } else if (o.construction == "custom") {
        if (o.file.empty())
            throw DomainError("custom covers need --base");
        const Origami base = read_origami(o.file);
        const FiniteGroupTable g = group_by_name(o.group);
        if (!o.wrap.empty()) {
            const auto comma = o.wrap.find(',');
            if (comma == std::string::npos)
                throw DomainError("--wrap expects two elements 'a,b'");
            c = group_cover(base, wrap_cocycle(base, g, g.find(o.wrap.substr(0, comma)),
                                               g.find(o.wrap.substr(comma + 1))));
        } else {
            if (o.wh.empty() || o.wv.empty())
                throw DomainError("custom covers need --wrap or both --wh and --wv");
            c = group_cover(base, {g, element_list(g, o.wh, base.degree()),
                                   element_list(g, o.wv, base.degree())});
        }
    } else {
        throw DomainError("unknown construction '" + o.construction + "'");
    }
    if (o.json)
        emit(out, to_json(c));
    else
        out << format_origami(c);
    return 0;
}

int cmd_buser(const Options& o, std::ostream& out) {
    json rows = json::array();
    out << std::setprecision(10);
    for (long t : o.traces) {
        const double len = trace_to_length(t);
        if (o.json)
            rows.push_back({{"trace", t}, {"length", len}});
        else
            out << "trace " << t << ": length " << len << "\n";
    }
    for (long k = o.k_from; k <= o.k_to; ++k) {
        const double b = buser_bound(k);
        const double target = 1.0 / (2.0 * static_cast<double>(k));
        if (o.json)
            rows.push_back({{"k", k}, {"bound", b}, {"target", target}, {"below", b < target}});
        else
            out << "k " << k << ": bound " << b << " < " << target << " " << yes_no(b < target)
                << "\n";
    }
    if (o.json)
        emit(out, rows);
    return 0;
}

int cmd_verify(const Options& o, std::ostream& out) {
    json j;
    try {
        j = json::parse(read_file(o.file));
    } catch (const json::exception& e) {
        throw ParseError(o.file + ": " + e.what());
    }
    const bool ok = verify_certificate(certificate_from_json(j));
    if (o.json)
        emit(out, {{"valid", ok}});
    else
        out << (ok ? "valid" : "invalid") << "\n";
    return ok ? 0 : 1;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Square-tiled surface toolkit", "origami-lab"};
    app.require_subcommand(1);
    Options o;
    app.add_flag("--json", o.json, "JSON output");
    app.add_option("--threads", o.threads, "Worker threads")->check(CLI::Range(1, 256));
    app.fallthrough();

    using Handler = std::function<int(const Options&, std::ostream&)>;
    std::vector<std::pair<CLI::App*, Handler>> commands;
    auto file_command = [&](const char* name, const char* help, Handler h) {
        CLI::App* sub = app.add_subcommand(name, help);
        sub->add_option("file", o.file, "Origami file")->required();
        commands.emplace_back(sub, std::move(h));
        return sub;
    };

    file_command("info", "Degree, genus, stratum, reducedness", cmd_info);
    file_command("orbit", "SL(2,Z) orbit", cmd_orbit);
    file_command("veech", "Veech group index and generators", cmd_veech);
    file_command("spin", "Spin parity", cmd_spin);
    file_command("component", "Connected component of the stratum", cmd_component);
    auto* kz = file_command("kz", "Cocycle matrix of a loop word", cmd_kz);
    kz->add_option("word", o.word, "Word over T S t s")->required();
    kz->add_option("--subspace", o.subspace, "full, h1_zero or w");
    auto* simp = file_command("simplicity", "Simplicity certificate search", cmd_simplicity);
    simp->add_option("--depth", o.depth, "Maximal word length")->check(CLI::PositiveNumber);
    simp->add_option("-o,--output", o.output, "Also write the certificate here");
    simp->add_option("--word", o.word, "Certify this loop word instead of searching");
    file_command("ekz", "Exact sum of Lyapunov exponents", cmd_ekz);
    auto* mc = file_command("mc", "Monte Carlo Lyapunov exponents", cmd_mc);
    mc->add_option("--seed", o.seed, "Random seed")->required();
    mc->add_option("--steps", o.steps, "Walk length")->check(CLI::PositiveNumber);
    mc->add_option("--trials", o.trials, "Independent walks")->check(CLI::PositiveNumber);
    mc->add_option("--subspace", o.subspace, "full, h1_zero or w");

    auto* gal = app.add_subcommand("galois", "Galois-pinching test of an integer matrix");
    gal->add_option("file", o.file, "Matrix file: JSON rows or whitespace table")->required();
    gal->add_option("--form", o.form_file, "Symplectic form preserved by the matrix");
    commands.emplace_back(gal, cmd_galois);

    auto* cover = app.add_subcommand("cover", "Build a finite-group cover");
    cover->add_option("construction", o.construction, "ew, ltilde or custom")->required();
    cover->add_option("--base", o.file, "Base origami (custom)");
    cover->add_option("--group", o.group, "quaternion or cyclicN (custom)");
    cover->add_option("--wrap", o.wrap, "Wrap cocycle 'a,b' (custom)");
    cover->add_option("--wh", o.wh, "Comma-separated horizontal cocycle (custom)");
    cover->add_option("--wv", o.wv, "Comma-separated vertical cocycle (custom)");
    commands.emplace_back(cover, cmd_cover);

    auto* buser = app.add_subcommand("buser", "Buser bound and geodesic lengths");
    buser->add_option("--k", o.k_from, "First k")->check(CLI::PositiveNumber);
    buser->add_option("--k-max", o.k_to, "Last k");
    buser->add_option("--trace", o.traces, "Traces to convert to lengths");
    commands.emplace_back(buser, cmd_buser);

    auto* verify = app.add_subcommand("verify", "Re-check a simplicity certificate");
    verify->add_option("file", o.file, "Certificate JSON")->required();
    commands.emplace_back(verify, cmd_verify);

    std::vector<const char*> argv;
    for (const auto& a : args)
        argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }
    if (o.k_to < o.k_from)
        o.k_to = o.k_from;
    for (const auto& [sub, handler] : commands) {
        if (!sub->parsed())
            continue;
        try {
            return handler(o, out);
        } catch (const InternalError& e) {
            err << "internal error: " << e.what() << "\n";
            return 1;
        } catch (const Error& e) {
            err << "error: " << e.what() << "\n";
            return 1;
        }
    }
    return 2;
}

} // namespace olab
