#include <CLI11.hpp>
#include <iostream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "twistcat/verifier.hpp"

namespace {

using namespace twistcat;
using json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitMismatch = 1;
constexpr int kExitExhausted = 2;
constexpr int kExitUsage = 64;

std::vector<Family> parse_families_arg(const std::string& arg, int n) {
  if (arg.empty() || arg == "all") return applicable_families(n);
  std::vector<Family> out;
  std::stringstream ss(arg);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto f = parse_family(item);
    if (!f) throw CLI::ValidationError("--families", "unknown family " + item);
    out.push_back(*f);
  }
  return out;
}

std::vector<Rep> parse_rep_arg(const std::string& arg) {
  if (arg == "ktheory") return {Rep::KTheory};
  if (arg == "sheaf") return {Rep::Sheaf};
  if (arg == "both" || arg.empty()) return {Rep::KTheory, Rep::Sheaf};
  throw CLI::ValidationError("--rep", "expected ktheory, sheaf or both");
}

void print_text_report(const std::vector<ReportRecord>& records,
                       std::ostream& os) {
  for (const ReportRecord& r : records) {
    os << r.relator << " n=" << r.n << " [" << rep_name(r.representation)
       << "]";
    if (r.generator_object) os << " on " << format_object(*r.generator_object);
    os << ": " << status_name(r.status);
    if (r.central_defect_m) os << " t^" << *r.central_defect_m;
    if (r.involution) os << " via " << *r.involution;
    if (r.representation == Rep::Sheaf)
      os << " (" << r.states_expanded << " states)";
    os << "\n";
    os << "  goal: " << format_word(r.goal.lhs) << "  =  "
       << format_word(r.goal.rhs) << "  on "
       << format_object(r.goal.object) << "\n";
    for (const TraceStep& st : r.trace) {
      os << "    ";
      const char* side = st.side == 0 ? "lhs" : "rhs";
      switch (st.kind) {
        case TraceStep::Kind::Evaluate:
          os << side << " eval " << format_letter(st.letter) << ": "
             << format_object(st.before) << " -> " << format_object(st.after);
          break;
        case TraceStep::Kind::BraidRewrite:
          os << side << " rewrite @" << st.position << ": "
             << format_word(st.removed) << " => " << format_word(st.inserted);
          break;
        case TraceStep::Kind::Cancel:
          os << side << " cancel @" << st.position;
          break;
        case TraceStep::Kind::Transfer:
          os << side << " transfer " << format_letter(st.letter);
          break;
      }
      os << "\n";
    }
  }
}

int exit_code_for(const std::vector<ReportRecord>& records,
                  bool cross_consistent) {
  bool exhausted = false;
  for (const ReportRecord& r : records) {
    if (r.status == Status::Mismatch) return kExitMismatch;
    if (r.status == Status::Exhausted) exhausted = true;
  }
  if (!cross_consistent) return kExitMismatch;
  return exhausted ? kExitExhausted : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Verifier for spherical-twist relations on a cycle of "
               "projective lines"};
  app.require_subcommand(1);

  int n = 1;
  std::string families_arg = "all";
  std::string rep_arg = "both";
  std::uint64_t budget = SearchOptions{}.budget;
  std::string output = "json";
  std::string word_arg;
  std::string object_arg;
  std::string divisor_arg;
  int base = 0;
  int jobs = 0;

  CLI::App* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("--n", n, "number of components")->required();
  verify->add_option("--families", families_arg,
                     "comma-separated families or 'all'");
  verify->add_option("--rep", rep_arg, "ktheory, sheaf or both");
  verify->add_option("--budget", budget, "search expansion budget per goal");
  verify->add_option("--output", output, "json or text");
  verify->add_option("--base", base,
                     "verify only the closing relation based at this index");
  verify->add_option("--jobs", jobs, "worker threads (0 = all cores)");

  CLI::App* matrix = app.add_subcommand("matrix", "K-theory matrix of a word");
  matrix->add_option("--n", n, "number of components")->required();
  matrix->add_option("--word", word_arg, "word to evaluate")->required();

  CLI::App* cohom = app.add_subcommand("cohom", "line bundle cohomology");
  cohom->add_option("--n", n, "number of components")->required();
  cohom->add_option("--divisor", divisor_arg, "divisor [a1,...,an]")
      ->required();

  CLI::App* act = app.add_subcommand("act", "apply a word to an object");
  act->add_option("--n", n, "number of components")->required();
  act->add_option("--word", word_arg, "word to apply")->required();
  act->add_option("--object", object_arg, "object acted on")->required();

  CLI::App* rel = app.add_subcommand("relators", "list relators");
  rel->add_option("--n", n, "number of components")->required();
  rel->add_option("--families", families_arg,
                  "comma-separated families or 'all'");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (verify->parsed()) {
      std::vector<Rep> reps = parse_rep_arg(rep_arg);
      SuiteOptions opts;
      opts.search.budget = budget;
      opts.jobs = jobs;
      std::vector<ReportRecord> records;
      if (verify->count("--base") > 0) {
        Relator based = g_relator_based_at(base, n);
        for (Rep r : reps)
          for (ReportRecord& rec :
               verify_on_generators(based, n, r, opts.search))
            records.push_back(std::move(rec));
      } else {
        std::vector<Family> families = parse_families_arg(families_arg, n);
        records = verify_relation_suite(n, families, reps, opts);
      }

      std::string cross_error;
      bool cross_ok = true;
      if (reps.size() > 1)
        cross_ok = cross_representation_consistent(records, &cross_error);

      if (output == "text") {
        print_text_report(records, std::cout);
        if (!cross_ok)
          std::cout << "cross-representation inconsistency: " << cross_error
                    << "\n";
      } else {
        json doc = json::parse(suite_json(records));
        if (reps.size() > 1) {
          json cross;
          cross["checked"] = true;
          cross["consistent"] = cross_ok;
          cross["error"] = cross_ok ? json(nullptr) : json(cross_error);
          doc["cross_representation"] = cross;
        }
        std::cout << doc.dump(2) << "\n";
      }
      return exit_code_for(records, cross_ok);
    }

    if (matrix->parsed()) {
      Word w = parse_word(word_arg, n);
      std::cout << format_matrix_json(evaluate_word_matrix(w, n)) << "\n";
      return kExitOk;
    }

    if (cohom->parsed()) {
      Divisor d = parse_divisor(divisor_arg);
      if (static_cast<int>(d.size()) != n)
        throw ParseError("divisor length does not match n", 0);
      CohomDims dims = cohomology(d);
      json j;
      j["h0"] = dims.h0;
      j["h1"] = dims.h1;
      j["deg"] = total_degree(d);
      std::cout << j.dump() << "\n";
      return kExitOk;
    }

    if (act->parsed()) {
      Word w = parse_word(word_arg, n);
      DObject obj = parse_object(object_arg, n);
      auto res = evaluate_word(w, obj);
      if (std::holds_alternative<StuckState>(res)) {
        const StuckState& stuck = std::get<StuckState>(res);
        std::cerr << "stuck at " << format_word(stuck.remaining) << " on "
                  << format_object(stuck.object) << " (h0="
                  << stuck.why.dims.h0 << ", h1=" << stuck.why.dims.h1
                  << ")\n";
        return kExitMismatch;
      }
      std::cout << format_object(std::get<DObject>(res)) << "\n";
      return kExitOk;
    }

    if (rel->parsed()) {
      std::vector<Relator> list;
      if (rel->count("--families") > 0) {
        for (Family f : parse_families_arg(families_arg, n))
          for (Relator& r : family_relators(f, n)) list.push_back(std::move(r));
      } else {
        list = relators({n, Variant::Extended});
      }
      json arr = json::array();
      for (const Relator& r : list) {
        json j;
        j["name"] = r.name;
        j["lhs"] = format_word(r.lhs);
        j["rhs"] = format_word(r.rhs);
        arr.push_back(j);
      }
      std::cout << arr.dump(2) << "\n";
      return kExitOk;
    }
  } catch (const ParseError& e) {
    std::cerr << "parse error at position " << e.position << ": " << e.what()
              << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid configuration: " << e.what() << "\n";
    return kExitUsage;
  } catch (const CLI::ValidationError& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
