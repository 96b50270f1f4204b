// Command-line front end: run honest and attacked sessions, verify
// transcripts offline, and check tiny-field transcripts against the
// straight-line oracle.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "hhmzz/hhmzz.hpp"

namespace {

using namespace hhmzz;

struct CommonArgs {
    std::string prime = "p23";
    std::string suite = "toy";
    std::string members_csv;
    std::uint64_t seed = 0;
    bool relay_challenges = false;
    bool h1_only = false;
    bool insecure_ok = false;
    std::string out_path;
};

std::vector<std::string> split_csv(const std::string& csv) {
    std::vector<std::string> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(item);
    return out;
}

SessionConfig to_config(const CommonArgs& args) {
    SessionConfig config;
    config.prime = args.prime;
    config.suite = args.suite;
    config.members = split_csv(args.members_csv);
    config.seed = args.seed;
    config.flags.kgc_relays_challenges = args.relay_challenges;
    config.flags.h1_only_evaluation_point = args.h1_only;
    config.insecure_ok = args.insecure_ok;
    return config;
}

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--prime", args.prime, "prime name (p23, modp2048) or hex modulus");
    cmd->add_option("--suite", args.suite, "hash suite: standard | toy");
    cmd->add_option("--members", args.members_csv, "comma-separated member identifiers")
        ->required();
    cmd->add_option("--seed", args.seed, "session seed (all randomness derives from it)")
        ->required();
    cmd->add_flag("--relay-challenges", args.relay_challenges,
                  "KGC relays the member challenges in the final broadcast");
    cmd->add_flag("--h1-only", args.h1_only, "use h1(x||r_i||r_0) without the leading x addition");
    cmd->add_flag("--insecure-ok", args.insecure_ok, "allow the toy suite at large primes");
    cmd->add_option("--out", args.out_path, "write the transcript JSON here");
}

int write_transcript(const Transcript& transcript, const std::string& path) {
    if (path.empty()) return 0;
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << transcript.canonical_json();
    if (!out) {
        std::cerr << "error: cannot write '" << path << "'\n";
        return 3;
    }
    return 0;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Errc::config_invalid, "cannot read '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int cmd_honest(const CommonArgs& args) {
    Transcript transcript = run_session(to_config(args), AdversaryScript{});
    bool agreement = true;
    for (const auto& [id, outcome] : transcript.outcomes)
        agreement = agreement && outcome.accepted() && outcome.key &&
                    *outcome.key == transcript.kgc_key;
    std::cout << "t=" << transcript.session_ids.size() << " prime=" << args.prime
              << " suite=" << args.suite << " agreement: " << (agreement ? "yes" : "no") << "\n";
    if (int rc = write_transcript(transcript, args.out_path)) return rc;
    return agreement ? 0 : 1;
}

int cmd_attack(const CommonArgs& args, const std::string& malicious, const std::string& victim,
               const std::string& forged_key) {
    AdversaryScript script;
    script.name = "insider-forge";
    script.malicious_id = malicious;
    script.victim_id = victim;
    if (forged_key != "random") script.forged_key_hex = forged_key;

    Transcript transcript = run_session(to_config(args), script);
    const Outcome& victim_outcome = transcript.outcomes.at(victim);
    bool others_ok = true;
    for (const auto& [id, outcome] : transcript.outcomes) {
        if (id == victim) continue;
        others_ok = others_ok && outcome.accepted() && outcome.key &&
                    *outcome.key == transcript.kgc_key;
    }
    bool degenerate = victim_outcome.key && *victim_outcome.key == transcript.kgc_key;
    bool success = victim_outcome.accepted() && victim_outcome.key && !degenerate && others_ok;

    std::cout << "kgc_key=" << fe_hex(transcript.kgc_key) << "\n";
    std::cout << "victim_key="
              << (victim_outcome.key ? fe_hex(*victim_outcome.key) : std::string("-")) << " ("
              << (victim_outcome.accepted() ? "accepted" : "rejected") << ")\n";
    std::cout << "forgery succeeded: " << (success ? "yes" : "no")
              << (degenerate ? " (degenerate: forged key equals the true key)" : "") << "\n";
    if (int rc = write_transcript(transcript, args.out_path)) return rc;
    return success ? 0 : 1;
}

int cmd_verify(const std::string& path) {
    Transcript transcript = Transcript::from_json(read_file(path));
    Report report = verify_transcript(transcript);
    for (const auto& m : report.members)
        std::cout << m.id << ": " << (m.accepted ? "accepted" : "rejected")
                  << (m.reproducible ? "" : " (NOT reproducible from view)")
                  << (m.accepted && !m.matches_kgc_key ? " [key differs from KGC key]" : "")
                  << "\n";
    for (const auto& w : report.witnesses)
        std::cout << "forgery witness: " << w.victim_id << " accepted " << w.accepted_key_hex
                  << " != kgc_key " << fe_hex(transcript.kgc_key) << "\n";
    if (!report.all_reproducible()) std::cout << "note: some outcomes not reproducible\n";
    std::cout << "verdict: " << (report.has_forgery() ? "forgery detected" : "clean") << "\n";
    return report.has_forgery() ? 1 : 0;
}

int cmd_oracle(const std::string& path) {
    Transcript transcript = Transcript::from_json(read_file(path));
    OracleResult result = oracle_check(transcript);
    if (!result.preconditions_ok) {
        std::cerr << "oracle requires the toy suite and a prime of at most 16 bits\n";
        return 2;
    }
    for (const auto& d : result.diffs) std::cout << "diff: " << d << "\n";
    std::cout << "oracle: " << (result.ok() ? "match" : "mismatch") << "\n";
    return result.ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"HHMZZ group key transfer protocol: honest runs, insider forgery, verification"};
    app.require_subcommand(1);

    CommonArgs honest_args;
    auto* honest = app.add_subcommand("honest", "run an honest session");
    add_common(honest, honest_args);

    CommonArgs attack_args;
    std::string malicious, victim, forged_key = "random";
    auto* attack = app.add_subcommand("attack", "run a session under the insider forgery");
    add_common(attack, attack_args);
    attack->add_option("--malicious", malicious, "insider identifier")->required();
    attack->add_option("--victim", victim, "victim identifier")->required();
    attack->add_option("--forged-key", forged_key, "hex value of S*, or 'random'");

    std::string verify_path;
    auto* verify = app.add_subcommand("verify", "replay the outcome checks of a transcript");
    verify->add_option("transcript", verify_path, "transcript JSON path")->required();

    std::string oracle_path;
    auto* oracle = app.add_subcommand("oracle", "diff a tiny-field transcript against the oracle");
    oracle->add_option("transcript", oracle_path, "transcript JSON path")->required();

    try {
        app.parse(argc, argv);
        if (honest->parsed()) return cmd_honest(honest_args);
        if (attack->parsed()) return cmd_attack(attack_args, malicious, victim, forged_key);
        if (verify->parsed()) return cmd_verify(verify_path);
        return cmd_oracle(oracle_path);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const hhmzz::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
