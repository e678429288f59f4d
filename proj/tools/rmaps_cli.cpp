#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rmaps/rmaps.h"

namespace {

enum Exit { kPass = 0, kFail = 1, kUsage = 2, kResource = 3, kError = 4 };

int exit_for(int status) {
  switch (status) {
    case RMAPS_E_PARAMETER:
    case RMAPS_E_PARSE:
    case RMAPS_E_NULL:
      return kUsage;
    case RMAPS_E_RESOURCE:
      return kResource;
    default:
      return kError;
  }
}

struct Context {
  rmaps_context* ctx = nullptr;
  Context() { rmaps_context_new(&ctx); }
  ~Context() { rmaps_context_free(ctx); }
};

struct Group {
  rmaps_group* g = nullptr;
  ~Group() { rmaps_group_free(g); }
};

struct ReportHandle {
  rmaps_report* r = nullptr;
  ~ReportHandle() { rmaps_report_free(r); }
};

int fail_with(rmaps_context* ctx, int status) {
  std::cerr << "rmaps: " << rmaps_status_name(status) << ": " << rmaps_context_last_error(ctx) << "\n";
  return exit_for(status);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Regular maps with characteristic -r^d: constructions and verification"};
  app.set_version_flag("--version", rmaps_version());
  app.require_subcommand(1);
  app.fallthrough();

  std::string format = "text", output;
  unsigned threads = 0;
  std::uint64_t order_cap = 0, census_cap = 0, matrix_cap = 0, search_cap = 0;
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "tsv", "text"}));
  app.add_option("--output", output, "Write the report to this file instead of stdout");
  app.add_option("--threads", threads, "Worker threads (0: available parallelism)");
  app.add_option("--order-cap", order_cap, "Largest group whose elements may be listed");
  app.add_option("--census-cap", census_cap, "Largest group order for census enumeration");
  app.add_option("--matrix-cap", matrix_cap, "Largest relation matrix (rows times columns)");
  app.add_option("--search-cap", search_cap, "Largest group order for triple searches");

  std::string group;
  std::vector<std::uint64_t> type;
  auto* verify = app.add_subcommand("verify", "Certify a triple of the given type and check the structural lemmas");
  verify->add_option("group", group, "Group descriptor")->required();
  verify->add_option("--type", type, "Type m,n")->delimiter(',')->expected(2)->required();

  auto* census = app.add_subcommand("census", "List the regular maps of a group up to isomorphism");
  census->add_option("group", group, "Group descriptor")->required();

  std::string row;
  rmaps_family_options fam{0, 0, 0, 0};
  auto* family = app.add_subcommand("family", "Search or check one family row");
  family->add_option("--row", row, "Row name, A1 to C7")->required();
  family->add_option("--max", fam.max, "Upper end of the search window");
  family->add_option("--r", fam.r, "Prime for rows C3 to C7");
  family->add_option("--alpha-max", fam.alpha_max, "Largest alpha");
  family->add_option("--beta-max", fam.beta_max, "Largest beta");

  bool all = false;
  auto* tables = app.add_subcommand("tables", "Check the closed forms of every family row");
  tables->add_flag("--all", all, "Also check the congruence rows and the PGL2 scan");

  std::uint64_t budget = 3000;
  auto* corollary = app.add_subcommand("corollary", "Verify the split-group table");
  corollary->add_option("--budget", budget, "Largest group order that is constructed");

  std::uint64_t prime = 3;
  bool smooth = false;
  auto* cover = app.add_subcommand("cover-rank", "Kernel rank check for branched covers");
  cover->add_option("--group", group, "Group descriptor")->required();
  cover->add_option("--type", type, "Type m,n")->delimiter(',')->expected(2)->required();
  cover->add_option("--r", prime, "Odd prime branching order");
  cover->add_flag("--smooth", smooth, "Report the smooth kernel abelianization instead");

  std::string matrix_file;
  auto* snf = app.add_subcommand("snf", "Smith normal form of an integer matrix file ('-' reads stdin)");
  snf->add_option("file", matrix_file, "Matrix file")->required();

  std::uint64_t q_bound = 121;
  auto* scan = app.add_subcommand("scan-pgl", "Scan PGL2(q) for prime-power characteristics");
  scan->add_option("--q-bound", q_bound, "Largest q");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kPass : kUsage;
  }

  Context c;
  if (!c.ctx) return kError;
  const std::map<std::string, std::uint64_t> budgets{
      {"order_cap", order_cap}, {"census_cap", census_cap}, {"matrix_cap", matrix_cap}, {"search_cap", search_cap}};
  for (const auto& [name, value] : budgets)
    if (value)
      if (int st = rmaps_context_set_budget(c.ctx, name.c_str(), value)) return fail_with(c.ctx, st);
  if (int st = rmaps_context_set_budget(c.ctx, "threads", threads)) return fail_with(c.ctx, st);

  Group g;
  if (!group.empty())
    if (int st = rmaps_group_parse(c.ctx, group.c_str(), &g.g)) return fail_with(c.ctx, st);

  ReportHandle rep;
  int st = RMAPS_OK;
  if (*verify) {
    st = rmaps_verify(c.ctx, g.g, type[0], type[1], &rep.r);
  } else if (*census) {
    st = rmaps_census(c.ctx, g.g, &rep.r);
  } else if (*family) {
    st = rmaps_family(c.ctx, row.c_str(), &fam, &rep.r);
  } else if (*tables) {
    st = rmaps_tables(c.ctx, all ? 1 : 0, &rep.r);
  } else if (*corollary) {
    st = rmaps_corollary(c.ctx, budget, &rep.r);
  } else if (*cover) {
    st = smooth ? rmaps_smooth_homology(c.ctx, g.g, type[0], type[1], &rep.r)
                : rmaps_cover_rank(c.ctx, g.g, type[0], type[1], prime, &rep.r);
  } else if (*snf) {
    std::string text;
    if (matrix_file == "-") {
      text.assign(std::istreambuf_iterator<char>(std::cin), {});
    } else {
      std::ifstream in(matrix_file);
      if (!in) {
        std::cerr << "rmaps: cannot read " << matrix_file << "\n";
        return kUsage;
      }
      text.assign(std::istreambuf_iterator<char>(in), {});
    }
    st = rmaps_snf(c.ctx, text.c_str(), &rep.r);
  } else if (*scan) {
    st = rmaps_scan_pgl(c.ctx, q_bound, &rep.r);
  }
  if (st) return fail_with(c.ctx, st);

  const rmaps_format f = format == "json" ? RMAPS_FORMAT_JSON : format == "tsv" ? RMAPS_FORMAT_TSV : RMAPS_FORMAT_TEXT;
  char* text = nullptr;
  if (int rs = rmaps_report_render(rep.r, f, &text)) return exit_for(rs);
  std::unique_ptr<char, void (*)(char*)> owned(text, rmaps_string_free);
  if (output.empty()) {
    std::fputs(text, stdout);
  } else {
    std::ofstream out(output);
    out << text;
    if (!out) {
      std::cerr << "rmaps: cannot write " << output << "\n";
      return kError;
    }
  }
  return rmaps_report_passed(rep.r) ? kPass : kFail;
}
