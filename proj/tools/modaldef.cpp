// Command-line front end. Exit codes: 0 success or pass, 1 semantic false or
// counterexample, 2 usage or input error.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "modaldef/corpus.hpp"
#include "modaldef/definability.hpp"
#include "modaldef/error.hpp"
#include "modaldef/frameops.hpp"
#include "modaldef/io.hpp"
#include "modaldef/suite.hpp"
#include "modaldef/team.hpp"
#include "modaldef/transform.hpp"

namespace {

using namespace modaldef;

constexpr int kOk = 0;
constexpr int kFalse = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct FormulaSource {
  std::string inline_text;
  std::string file;
};

void add_formula_flags(CLI::App* cmd, FormulaSource& src) {
  cmd->add_option("--formula", src.inline_text, "Formula text");
  cmd->add_option("--file", src.file, "File holding the formula");
}

std::string read_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream os;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line[0] == '#') continue;
    os << line << '\n';
  }
  return os.str();
}

Formula load_formula(const FormulaSource& src, bool allow_reserved = true) {
  if (!src.inline_text.empty() && !src.file.empty()) throw UsageError("give either --formula or --file, not both");
  if (src.inline_text.empty() && src.file.empty()) throw UsageError("a formula is required (--formula or --file)");
  const std::string text = src.file.empty() ? src.inline_text : read_text(src.file);
  return parse(text, ParseOptions{.allow_reserved = allow_reserved});
}

// Collects the machine-readable report and writes it on exit.
struct Report {
  std::string json_path;
  Json body = Json::object();
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

  void finish(const std::string& command, const std::string& verdict) {
    if (json_path.empty()) return;
    Json out{{"command", command}};
    out["inputs"] = body.contains("inputs") ? body["inputs"] : Json::object();
    out["verdict"] = verdict;
    for (auto& [k, v] : body.items()) {
      if (k != "inputs") out[k] = v;
    }
    out["timing_ms"] =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    write_json_file(json_path, out);
  }
};

void print_frame(const Frame& f) { std::cout << frame_to_json(f).dump() << '\n'; }

void print_countermodel(const Countermodel& c) {
  std::cout << "countermodel: " << model_to_json(c.model).dump();
  if (c.point) std::cout << " at " << c.model.frame().name(*c.point);
  if (c.team) std::cout << " on team " << team_to_json(c.model.frame(), *c.team).dump();
  std::cout << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Definability toolkit for modal logics with universal modality and team semantics"};
  app.require_subcommand(1);
  app.fallthrough();
  Report report;
  app.add_option("--json", report.json_path, "Write a machine-readable report to PATH");

  FormulaSource src;
  std::string model_path, frame_path, world, team_text, form = "box", to, property, level = "quick",
              replay_path, fragment = "ML", other_text, mode = "kripke_point", points;
  std::vector<std::string> frame_paths;
  std::size_t max_points = 3, max_seed = 0, count = 10, depth = 2, props = 2;
  std::uint64_t seed = kDefaultSuiteSeed;
  std::vector<int> only;

  auto* c_parse = app.add_subcommand("parse", "Parse, classify and re-render a formula");
  add_formula_flags(c_parse, src);

  auto* c_eval = app.add_subcommand("eval", "Evaluate at a world (Kripke) or on a team");
  add_formula_flags(c_eval, src);
  c_eval->add_option("--model", model_path, "Model JSON file")->required();
  auto* o_world = c_eval->add_option("--world", world, "Point name");
  auto* o_team = c_eval->add_option("--team", team_text, "Comma-separated point names");
  o_world->excludes(o_team);

  auto* c_nf = app.add_subcommand("nf", "Normal forms");
  add_formula_flags(c_nf, src);
  c_nf->add_option("--form", form, "box | box-dnf | clauses | idis")
      ->check(CLI::IsMember({"box", "box-dnf", "clauses", "idis"}));

  auto* c_tr = app.add_subcommand("translate", "Translations between fragments");
  add_formula_flags(c_tr, src);
  c_tr->add_option("--to", to, "mdl | idis | clauses")->required()->check(CLI::IsMember({"mdl", "idis", "clauses"}));

  auto* c_fv = app.add_subcommand("frame-valid", "Frame validity");
  add_formula_flags(c_fv, src);
  c_fv->add_option("--frame", frame_path, "Frame (or model) JSON file")->required();

  auto* c_fc = app.add_subcommand("frame-class", "Frames up to --max-points validating the formula");
  add_formula_flags(c_fc, src);
  c_fc->add_option("--max-points", max_points, "Largest frame size")->check(CLI::Range(1, 4));

  auto* c_audit = app.add_subcommand("audit", "Closure and reflection audits");
  add_formula_flags(c_audit, src);
  c_audit->add_option("--property", property,
                      "gen-subframe | disjoint-union | bounded-morphism | fin-gen | ultrafilter");
  c_audit->add_option("--max-points", max_points, "Largest frame size")->check(CLI::Range(1, 4));
  c_audit->add_option("--max-seed", max_seed, "Seed bound for fin-gen (0: frame size)");
  c_audit->add_option("--replay", replay_path, "Re-verify a replay block from a JSON report");

  auto* c_eq = app.add_subcommand("equiv", "Exhaustive equivalence check of two formulas");
  add_formula_flags(c_eq, src);
  c_eq->add_option("--other", other_text, "Second formula");
  c_eq->add_option("--mode", mode, "kripke_point | team | model_validity | frame_validity");
  c_eq->add_option("--max-points", max_points, "Largest frame size")->check(CLI::Range(1, 4));
  c_eq->add_option("--replay", replay_path, "Re-verify a replay block from a JSON report");

  auto* c_ue = app.add_subcommand("ue", "Ultrafilter extension of a frame");
  c_ue->add_option("--frame", frame_path, "Frame JSON file")->required();

  auto* c_union = app.add_subcommand("union", "Disjoint union of frames");
  c_union->add_option("--frame", frame_paths, "Frame JSON files (repeat)")->required();

  auto* c_gensub = app.add_subcommand("gensub", "Generated subframe");
  c_gensub->add_option("--frame", frame_path, "Frame JSON file")->required();
  c_gensub->add_option("--points", points, "Comma-separated seed points")->required();

  auto* c_gen = app.add_subcommand("generate", "Seeded random formulas, one per line");
  c_gen->add_option("--fragment", fragment, "Fragment name");
  c_gen->add_option("--depth", depth, "Maximal modal depth");
  c_gen->add_option("--props", props, "Number of propositions");
  c_gen->add_option("--count", count, "Number of formulas");
  c_gen->add_option("--seed", seed, "Seed");

  auto* c_suite = app.add_subcommand("suite", "Acceptance suite");
  c_suite->add_option("--level", level, "quick | full")->check(CLI::IsMember({"quick", "full"}));
  c_suite->add_option("--seed", seed, "Base seed");
  c_suite->add_option("--only", only, "Criterion ids to run")->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    if (command == "parse") {
      const Formula f = load_formula(src);
      std::cout << render(f) << '\n'
                << "fragment: " << fragment_name(classify(f)) << '\n'
                << "modal depth: " << modal_depth(f) << '\n';
      report.body["inputs"] = {{"formula", render(f)}};
      report.body["fragment"] = fragment_name(classify(f));
      report.body["modal_depth"] = modal_depth(f);
      report.finish(command, "ok");
      return kOk;
    }

    if (command == "eval") {
      if (world.empty() == team_text.empty()) throw UsageError("eval needs exactly one of --world and --team");
      const Formula f = load_formula(src);
      const Model m = model_from_json(read_json_file(model_path));
      bool holds;
      report.body["inputs"] = {{"formula", render(f)}, {"model", model_path}};
      if (!world.empty()) {
        holds = eval_pointed(m, world, f);
        report.body["inputs"]["world"] = world;
      } else {
        const Team t = parse_team(m.frame(), team_text);
        holds = eval_team(m, t, f);
        report.body["inputs"]["team"] = team_to_json(m.frame(), t);
      }
      std::cout << (holds ? "true" : "false") << '\n';
      report.finish(command, holds ? "true" : "false");
      return holds ? kOk : kFalse;
    }

    if (command == "nf") {
      const Formula f = load_formula(src);
      Json out;
      if (form == "box" || form == "box-dnf") {
        const Formula g = to_box_form(f, form == "box" ? Polarity::conjunctive : Polarity::disjunctive);
        std::cout << render(g) << '\n';
        out = render(g);
      } else if (form == "clauses") {
        const ClosedClauseSet set = to_closed_clauses(f);
        for (const auto& c : set) std::cout << render(closed_clause_formula(c)) << '\n';
        out = clauses_to_json(set);
      } else {
        out = Json::array();
        for (const auto& d : to_idis_normal_form(f)) {
          std::cout << render(d) << '\n';
          out.push_back(render(d));
        }
      }
      report.body["inputs"] = {{"formula", render(f)}, {"form", form}};
      report.body["result"] = out;
      report.finish(command, "ok");
      return kOk;
    }

    if (command == "translate") {
      const Formula f = load_formula(src, false);
      Json out;
      if (to == "mdl") {
        const Formula g = emdl_to_mdl(f);
        std::cout << render(g) << '\n';
        out = render(g);
      } else if (to == "idis") {
        Formula g = f;
        if (classify(f) == Fragment::ml_ubox_pos) {
          // Team validity of a conjunction is validity of each conjunct.
          std::vector<Formula> parts;
          for (const auto& c : to_closed_clauses(f)) parts.push_back(clause_to_idis(c));
          if (parts.empty()) throw InputError("formula has no closed clauses");
          g = conj_all(parts);
        } else {
          g = dep_to_idis(f);
        }
        std::cout << render(g) << '\n';
        out = render(g);
      } else {
        const ClosedClauseSet set = idis_to_clause(f);
        for (const auto& c : set) std::cout << render(closed_clause_formula(c)) << '\n';
        out = clauses_to_json(set);
      }
      report.body["inputs"] = {{"formula", render(f)}, {"to", to}};
      report.body["result"] = out;
      report.finish(command, "ok");
      return kOk;
    }

    if (command == "frame-valid") {
      const Formula f = load_formula(src);
      const Frame fr = frame_from_json(read_json_file(frame_path));
      const auto c = find_countermodel(fr, f);
      std::cout << (c ? "false" : "true") << '\n';
      if (c) print_countermodel(*c);
      report.body["inputs"] = {{"formula", render(f)}, {"frame", frame_path}};
      if (c) report.body["witness"] = countermodel_to_json(*c);
      report.finish(command, c ? "false" : "true");
      return c ? kFalse : kOk;
    }

    if (command == "frame-class") {
      const Formula f = load_formula(src);
      const FrameUniverse u{max_points};
      const auto cls = frame_class(f, u);
      Json frames = Json::array();
      for (const auto& fr : cls) {
        print_frame(fr);
        frames.push_back(frame_to_json(fr));
      }
      std::cout << cls.size() << " of " << u.count() << " frames\n";
      report.body["inputs"] = {{"formula", render(f)}, {"max_points", max_points}};
      report.body["frames"] = frames;
      report.finish(command, "ok");
      return kOk;
    }

    if (command == "audit" || command == "equiv") {
      if (!replay_path.empty()) {
        const bool ok = replay_json(read_json_file(replay_path));
        std::cout << (ok ? "replay reproduces the counterexample" : "replay does not reproduce") << '\n';
        report.body["inputs"] = {{"replay", replay_path}};
        report.finish(command, ok ? "counterexample" : "replay_failed");
        return ok ? kFalse : kUsage;
      }
    }

    if (command == "audit") {
      if (property.empty()) throw UsageError("audit needs --property");
      const Formula f = load_formula(src);
      const AuditReport r = audit(property_from_name(property), f, FrameUniverse{max_points}, AuditOptions{max_seed});
      const Json j = audit_to_json(r);
      std::cout << property_name(r.property) << ": " << verdict_name(r.verdict) << " (" << r.frames_checked
                << " frames)\n";
      if (!r.detail.empty()) std::cout << r.detail << '\n';
      if (r.witness) std::cout << "witness: " << j["witness"].dump() << '\n' << "replay: " << j["replay"].dump() << '\n';
      report.body["inputs"] = {{"formula", render(f)}, {"property", property_name(r.property)}, {"max_points", max_points}};
      if (r.witness) {
        report.body["witness"] = j["witness"];
        report.body["replay"] = j["replay"];
      }
      report.finish(command, verdict_name(r.verdict));
      return r.verdict == Verdict::counterexample ? kFalse : kOk;
    }

    if (command == "equiv") {
      if (other_text.empty()) throw UsageError("equiv needs --other");
      const Formula f = load_formula(src);
      const Formula g = parse(other_text, ParseOptions{.allow_reserved = true});
      const EquivMode m = equiv_mode_from_name(mode);
      const EquivResult r = oracle_equiv(f, g, FrameUniverse{max_points}, m);
      const Json j = equiv_to_json(f, g, m, r);
      std::cout << (r.equivalent ? "pass" : "counterexample") << " (" << r.cases << " cases)\n";
      if (r.counterexample) std::cout << "witness: " << j["witness"].dump() << '\n';
      report.body["inputs"] = {{"formula", render(f)}, {"other", render(g)}, {"mode", equiv_mode_name(m)},
                               {"max_points", max_points}};
      if (r.counterexample) {
        report.body["witness"] = j["witness"];
        report.body["replay"] = j["replay"];
      }
      report.finish(command, r.equivalent ? "pass" : "counterexample");
      return r.equivalent ? kOk : kFalse;
    }

    if (command == "ue") {
      const Frame fr = frame_from_json(read_json_file(frame_path));
      const UltrafilterExtension ue = ultrafilter_extension(fr);
      const bool iso = ue.principal_is_isomorphism && is_isomorphic(ue.frame, fr);
      print_frame(ue.frame);
      std::cout << ue.filters.size() << " ultrafilters; isomorphic via principal filters: " << (iso ? "yes" : "no")
                << '\n';
      report.body["inputs"] = {{"frame", frame_path}};
      report.body["result"] = frame_to_json(ue.frame);
      report.body["isomorphic"] = iso;
      report.finish(command, iso ? "isomorphic" : "not_isomorphic");
      return iso ? kOk : kFalse;
    }

    if (command == "union") {
      std::vector<Frame> frames;
      for (const auto& p : frame_paths) frames.push_back(frame_from_json(read_json_file(p)));
      const Frame u = disjoint_union(frames);
      print_frame(u);
      report.body["inputs"] = {{"frames", frame_paths}};
      report.body["result"] = frame_to_json(u);
      report.finish(command, "ok");
      return kOk;
    }

    if (command == "gensub") {
      const Frame fr = frame_from_json(read_json_file(frame_path));
      const Frame sub = generated_subframe(fr, parse_team(fr, points));
      print_frame(sub);
      report.body["inputs"] = {{"frame", frame_path}, {"points", points}};
      report.body["result"] = frame_to_json(sub);
      report.finish(command, "ok");
      return kOk;
    }

    if (command == "generate") {
      const GenConfig cfg{fragment_from_name(fragment), depth, props, seed, count, 2};
      Json out = Json::array();
      for (const auto& f : generate(cfg)) {
        std::cout << render(f) << '\n';
        out.push_back(render(f));
      }
      report.body["inputs"] = {{"fragment", fragment}, {"depth", depth}, {"props", props}, {"count", count}};
      report.body["seed"] = seed;
      report.body["result"] = out;
      report.finish(command, "ok");
      return kOk;
    }

    if (command == "suite") {
      SuiteOptions opts{level_from_name(level), seed, only};
      std::cout << "suite level " << level << ", base seed " << seed << '\n';
      const auto results = run_suite(opts, [](const CriterionResult& r) { std::cout << format_result(r) << std::endl; });
      bool all = true;
      Json rows = Json::array();
      for (const auto& r : results) {
        all = all && r.passed;
        rows.push_back({{"id", r.id}, {"title", r.title}, {"passed", r.passed}, {"detail", r.detail},
                        {"seconds", r.seconds}, {"seed", r.seed}});
      }
      std::cout << (all ? "all criteria pass" : "some criteria fail") << '\n';
      report.body["inputs"] = {{"level", level}};
      report.body["seed"] = seed;
      report.body["criteria"] = rows;
      report.finish(command, all ? "pass" : "fail");
      return all ? kOk : kFalse;
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const modaldef::ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kUsage;
  } catch (const FragmentError& e) {
    std::cerr << "fragment error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
