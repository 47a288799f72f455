// Command-line surface for the level-2 q-Fock space library: straightening,
// generator and boson actions, vacuum checks, characters, crystal graphs, and
// the acceptance self-test. Output is deterministic for fixed inputs; exit
// codes are 0 (success), 1 (verification failure), 2 (usage or input error).
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "qfock/json_io.hpp"
#include "qfock/selftest.hpp"

namespace {

using namespace qfock;

Json read_json_input(const std::string& path) {
    std::string text;
    if (path == "-") {
        std::ostringstream buf;
        buf << std::cin.rdbuf();
        text = buf.str();
    } else {
        std::ifstream in(path);
        if (!in) throw std::invalid_argument("cannot open input file: " + path);
        std::ostringstream buf;
        buf << in.rdbuf();
        text = buf.str();
    }
    return Json::parse(text);
}

GroundSeq seq_flag(const std::string& s) {
    auto seq = parse_ground(s);
    if (!seq) throw CLI::ValidationError("--seq", "expected A or B, got '" + s + "'");
    return *seq;
}

Gen gen_flag(const std::string& s) {
    auto g = parse_gen(s);
    if (!g) throw CLI::ValidationError("--gen", "unknown generator '" + s + "'");
    return *g;
}

bool json_format(const std::string& f) {
    if (f == "json") return true;
    if (f == "text" || f == "table") return false;
    throw CLI::ValidationError("--format", "expected text, table, or json, got '" + f + "'");
}

int cmd_straighten(const std::string& in_path, const std::string& format) {
    WedgeVector v = wedgevector_from_json(read_json_input(in_path));
    WedgeVector nf = straighten(v);
    if (!json_format(format)) std::cout << nf.str() << "\n";
    std::cout << wedgevector_to_json(nf).dump() << "\n";
    return 0;
}

int cmd_act(const std::string& gen, const std::string& seq, int m, int precision,
            const std::string& in_path, const std::string& format) {
    FockVector v = in_path.empty() ? vacuum(seq_flag(seq), m, precision)
                                   : fockvector_from_json(read_json_input(in_path));
    FockVector out = uq_apply_fock(gen_flag(gen), v);
    if (!json_format(format)) std::cout << out.str() << "\n";
    std::cout << fockvector_to_json(out).dump() << "\n";
    return 0;
}

int cmd_vacuum_test(const std::string& seq_s, int m, int precision) {
    const GroundSeq seq = seq_flag(seq_s);
    const Weight lam = ground_lambda(seq, m);
    FockVector vac = vacuum(seq, m, precision);
    int failures = 0;
    auto report = [&](const std::string& what, bool ok) {
        std::cout << (ok ? "[PASS] " : "[FAIL] ") << what << "\n";
        if (!ok) ++failures;
    };

    int window = 0;
    bool window_ok = true;
    for (int a = -3; a <= 3; ++a)
        for (int j = 0; j <= 2; ++j) {
            AffLabel b{a, j};
            if (energy_H(b, ground_elt(seq, m)) > 0) continue;
            ++window;
            if (!normalize_fock(wedge_front(b, vac)).is_zero()) window_ok = false;
        }
    report("all " + std::to_string(window) + " nonpositive-energy window labels annihilate vac(" +
               seq_s + "," + std::to_string(m) + ") mod q^" + std::to_string(precision),
           window_ok);
    for (Gen e : {Gen::E0, Gen::E1})
        report(gen_name(e) + " vac = 0", uq_apply_fock(e, vac).is_zero());
    for (int i : {0, 1}) {
        Gen t = i == 0 ? Gen::T0 : Gen::T1;
        Coefficient scale = Coefficient::q_power(lam.h(i));
        report(gen_name(t) + " vac = q^" + std::to_string(lam.h(i)) + " vac",
               fock_equal_mod(uq_apply_fock(t, vac), scale * vac));
    }
    return failures == 0 ? 0 : 1;
}

int cmd_commutator(int a, int b, const std::string& seq_s, int m, int precision,
                   const std::string& format) {
    if (a == 0 || b == 0) throw CLI::ValidationError("--a/--b", "modes must be nonzero");
    const GroundSeq seq = seq_flag(seq_s);
    TruncSeries got = boson_commutator_vac(a, b, seq, m, precision);

    std::string expectation;
    bool pass;
    if (a + b != 0) {
        expectation = "0";
        pass = got.is_zero();
    } else if (seq == GroundSeq::B) {
        TruncSeries want = gamma_const_sequence(std::abs(a), precision);
        expectation = want.str();
        pass = got == (a > 0 ? want : -want);
    } else {
        // Alternating sequence: only the constant term is pinned.
        expectation = "constant term " + std::to_string(a > 0 ? std::abs(a) : -std::abs(a));
        pass = got.coeff(0) == (a > 0 ? std::abs(a) : -std::abs(a));
    }

    if (json_format(format)) {
        Json out{{"a", a},       {"b", b},
                 {"seq", seq_s}, {"sector", m},
                 {"series", series_to_json(got)}, {"expected", expectation},
                 {"pass", pass}};
        std::cout << out.dump() << "\n";
    } else {
        std::cout << "[B_" << a << ", B_" << b << "] vac(" << seq_s << "," << m
                  << ") = " << got.str() << "\n"
                  << "expected " << expectation << ": " << (pass ? "PASS" : "FAIL") << "\n";
    }
    return pass ? 0 : 1;
}

int cmd_character(const std::string& seq_s, int m, int depth, const std::string& format) {
    CharacterReport r = verify_character(seq_flag(seq_s), m, depth);
    if (json_format(format)) std::cout << character_report_to_json(r).dump() << "\n";
    else std::cout << r.str();
    return r.ok ? 0 : 1;
}

int cmd_crystal_dot(const std::string& graph, int lo, int hi, bool perfect_report) {
    if (perfect_report) {
        PerfectCheckReport r = perfect_check(2);
        std::cout << perfect_report_to_json(r).dump() << "\n";
        return r.ok() ? 0 : 1;
    }
    if (graph == "B") std::cout << export_dot_crystal();
    else if (graph == "BtensorB") std::cout << export_dot_tensor_square();
    else if (graph == "Baff") {
        if (lo > hi) throw CLI::ValidationError("--lo/--hi", "empty window");
        std::cout << export_dot_affine(lo, hi);
    } else {
        throw CLI::ValidationError("--graph", "expected B, BtensorB, or Baff, got '" + graph + "'");
    }
    return 0;
}

} // namespace

int run_cli(int argc, char** argv) {
    CLI::App app{"level-2 q-deformed Fock space toolkit"};
    app.require_subcommand(1);
    app.failure_message(CLI::FailureMessage::help);

    std::string format = "text", seq = "B", gen, in_path, act_in, graph = "B";
    int sector = 0, a = 1, b = -1, lo = 0, hi = 1;
    int precision = qfock::config().precision;
    int depth = qfock::config().depth;
    unsigned seed = 20260816;
    bool perfect_report = false;

    auto* straighten_cmd =
        app.add_subcommand("straighten", "normal form of a wedge vector read as JSON");
    straighten_cmd->add_option("--in", in_path, "input file path, or - for stdin")
        ->default_val("-");
    straighten_cmd->add_option("--format", format, "text or json")->capture_default_str();

    auto* act_cmd = app.add_subcommand("act", "apply a generator to the vacuum or a JSON vector");
    act_cmd->add_option("--gen", gen, "one of e0 e1 f0 f1 t0 t1 t0inv t1inv")->required();
    auto* act_seq = act_cmd->add_option("--seq", seq, "ground sequence A or B");
    auto* act_sector = act_cmd->add_option("--sector", sector, "vacuum sector m");
    act_cmd->add_option("--precision", precision, "q-adic truncation order")
        ->capture_default_str();
    act_cmd->add_option("--in", act_in, "act on this Fock vector (JSON file) instead")
        ->excludes(act_seq)
        ->excludes(act_sector);
    act_cmd->add_option("--format", format, "text or json")->capture_default_str();

    auto* vac_cmd = app.add_subcommand("vacuum-test", "vacuum annihilation and torus identities");
    vac_cmd->add_option("--seq", seq, "ground sequence A or B")->capture_default_str();
    vac_cmd->add_option("--sector", sector, "vacuum sector m")->capture_default_str();
    vac_cmd->add_option("--precision", precision, "q-adic truncation order")
        ->capture_default_str();

    auto* comm_cmd = app.add_subcommand("commutator", "boson commutator scalar on the vacuum");
    comm_cmd->add_option("--a", a, "first mode")->required();
    comm_cmd->add_option("--b", b, "second mode")->required();
    comm_cmd->add_option("--seq", seq, "ground sequence A or B")->capture_default_str();
    comm_cmd->add_option("--sector", sector, "vacuum sector m")->capture_default_str();
    comm_cmd->add_option("--precision", precision, "q-adic truncation order")
        ->capture_default_str();
    comm_cmd->add_option("--format", format, "text or json")->capture_default_str();

    auto* char_cmd = app.add_subcommand("character", "character factorization report");
    char_cmd->add_option("--seq", seq, "ground sequence A or B")->capture_default_str();
    char_cmd->add_option("--sector", sector, "vacuum sector m")->capture_default_str();
    char_cmd->add_option("--depth", depth, "delta-depth cutoff")->capture_default_str();
    char_cmd->add_option("--format", format, "table or json")->capture_default_str();

    auto* dot_cmd = app.add_subcommand("crystal-dot", "crystal graphs as DOT");
    dot_cmd->add_option("--graph", graph, "B, BtensorB, or Baff")->capture_default_str();
    dot_cmd->add_option("--lo", lo, "lowest z-exponent for Baff")->capture_default_str();
    dot_cmd->add_option("--hi", hi, "highest z-exponent for Baff")->capture_default_str();
    dot_cmd->add_flag("--perfect-report", perfect_report,
                      "print the perfectness check report as JSON instead");

    auto* self_cmd = app.add_subcommand("selftest", "run the full acceptance suite");
    self_cmd->add_option("--seed", seed, "seed for the randomized criterion")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        if (straighten_cmd->parsed()) return cmd_straighten(in_path, format);
        if (act_cmd->parsed()) return cmd_act(gen, seq, sector, precision, act_in, format);
        if (vac_cmd->parsed()) return cmd_vacuum_test(seq, sector, precision);
        if (comm_cmd->parsed()) return cmd_commutator(a, b, seq, sector, precision, format);
        if (char_cmd->parsed()) return cmd_character(seq, sector, depth, format);
        if (dot_cmd->parsed()) return cmd_crystal_dot(graph, lo, hi, perfect_report);
        if (self_cmd->parsed()) return qfock::run_selftest(std::cout, seed) == 0 ? 0 : 1;
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const qfock::Json::parse_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "verification error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

int main(int argc, char** argv) {
    try {
        return run_cli(argc, argv);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
