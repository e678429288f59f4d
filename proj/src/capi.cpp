#include "rmaps/rmaps.h"

#include <chrono>
#include <cstring>
#include <new>
#include <string>

#include "commands.hpp"
#include "rmaps/errors.hpp"

struct rmaps_context {
  rmaps::Budgets budgets;
  std::string last_error;
};

struct rmaps_group {
  rmaps::commands::GroupSpec spec;
};

struct rmaps_report {
  rmaps::commands::Report report;
};

namespace {

using rmaps::commands::Report;

int status_of(rmaps::ErrorKind k) {
  switch (k) {
    case rmaps::ErrorKind::parameter:
      return RMAPS_E_PARAMETER;
    case rmaps::ErrorKind::contract:
      return RMAPS_E_CONTRACT;
    case rmaps::ErrorKind::resource:
      return RMAPS_E_RESOURCE;
    case rmaps::ErrorKind::parse:
      return RMAPS_E_PARSE;
    case rmaps::ErrorKind::internal:
      break;
  }
  return RMAPS_E_INTERNAL;
}

template <class F>
int guarded(rmaps_context* ctx, F&& body) {
  if (!ctx) return RMAPS_E_NULL;
  ctx->last_error.clear();
  try {
    body();
    return RMAPS_OK;
  } catch (const rmaps::Error& e) {
    ctx->last_error = e.what();
    return status_of(e.kind());
  } catch (const std::bad_alloc&) {
    ctx->last_error = "out of memory";
    return RMAPS_E_RESOURCE;
  } catch (const std::exception& e) {
    ctx->last_error = e.what();
    return RMAPS_E_INTERNAL;
  }
}

template <class F>
int run_report(rmaps_context* ctx, rmaps_report** out, F&& make) {
  if (!out) return RMAPS_E_NULL;
  *out = nullptr;
  return guarded(ctx, [&] {
    const auto start = std::chrono::steady_clock::now();
    Report rep = make();
    rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    *out = new rmaps_report{std::move(rep)};
  });
}

char* dup_string(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (!p) throw std::bad_alloc();
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

int null_group(rmaps_context* ctx) {
  if (ctx) ctx->last_error = "null group handle";
  return RMAPS_E_NULL;
}

}  // namespace

extern "C" {

const char* rmaps_version(void) { return rmaps::commands::version(); }

const char* rmaps_status_name(int status) {
  switch (status) {
    case RMAPS_OK:
      return "ok";
    case RMAPS_E_PARAMETER:
      return "parameter error";
    case RMAPS_E_CONTRACT:
      return "contract error";
    case RMAPS_E_RESOURCE:
      return "resource error";
    case RMAPS_E_INTERNAL:
      return "internal error";
    case RMAPS_E_PARSE:
      return "parse error";
    case RMAPS_E_NULL:
      return "null argument";
    case RMAPS_E_IO:
      return "i/o error";
    default:
      return "unknown status";
  }
}

int rmaps_context_new(rmaps_context** out) {
  if (!out) return RMAPS_E_NULL;
  *out = new (std::nothrow) rmaps_context();
  return *out ? RMAPS_OK : RMAPS_E_RESOURCE;
}

void rmaps_context_free(rmaps_context* ctx) { delete ctx; }

int rmaps_context_set_budget(rmaps_context* ctx, const char* name, uint64_t value) {
  if (!name) return RMAPS_E_NULL;
  return guarded(ctx, [&] {
    rmaps::Budgets& b = ctx->budgets;
    const std::string key = name;
    if (key == "threads") {
      b.threads = static_cast<unsigned>(value);
      return;
    }
    if (value == 0) throw rmaps::ParameterError("budget " + key + " must be positive");
    if (key == "order_cap")
      b.order_cap = value;
    else if (key == "census_cap")
      b.census_cap = value;
    else if (key == "search_cap")
      b.search_cap = value;
    else if (key == "aut_cap")
      b.aut_cap = value;
    else if (key == "homology_cap")
      b.homology_cap = value;
    else if (key == "matrix_cap")
      b.matrix_cap = value;
    else
      throw rmaps::ParameterError("unknown budget '" + key + "'");
  });
}

const char* rmaps_context_last_error(const rmaps_context* ctx) { return ctx ? ctx->last_error.c_str() : ""; }

int rmaps_group_parse(rmaps_context* ctx, const char* descriptor, rmaps_group** out) {
  if (!descriptor || !out) return RMAPS_E_NULL;
  *out = nullptr;
  return guarded(ctx, [&] { *out = new rmaps_group{rmaps::commands::parse_group(descriptor, ctx->budgets)}; });
}

void rmaps_group_free(rmaps_group* group) { delete group; }

int rmaps_group_order(rmaps_context* ctx, const rmaps_group* group, char** out) {
  if (!group) return null_group(ctx);
  if (!out) return RMAPS_E_NULL;
  return guarded(ctx, [&] { *out = dup_string(rmaps::to_string(group->spec.order())); });
}

int rmaps_verify(rmaps_context* ctx, const rmaps_group* group, uint64_t m, uint64_t n, rmaps_report** out) {
  if (!group) return null_group(ctx);
  return run_report(ctx, out, [&] { return rmaps::commands::run_verify(group->spec, m, n, ctx->budgets); });
}

int rmaps_census(rmaps_context* ctx, const rmaps_group* group, rmaps_report** out) {
  if (!group) return null_group(ctx);
  return run_report(ctx, out, [&] { return rmaps::commands::run_census(group->spec, ctx->budgets); });
}

int rmaps_family(rmaps_context* ctx, const char* row, const rmaps_family_options* options, rmaps_report** out) {
  if (!row) return RMAPS_E_NULL;
  rmaps::commands::FamilyOptions o;
  if (options) o = {options->max, options->r, options->alpha_max, options->beta_max};
  return run_report(ctx, out, [&] { return rmaps::commands::run_family(row, o, ctx->budgets); });
}

int rmaps_tables(rmaps_context* ctx, int all, rmaps_report** out) {
  return run_report(ctx, out, [&] { return rmaps::commands::run_tables(all != 0, ctx->budgets); });
}

int rmaps_corollary(rmaps_context* ctx, uint64_t construct_cap, rmaps_report** out) {
  return run_report(ctx, out, [&] { return rmaps::commands::run_corollary(construct_cap, ctx->budgets); });
}

int rmaps_cover_rank(rmaps_context* ctx, const rmaps_group* group, uint64_t m, uint64_t n, uint64_t r,
                     rmaps_report** out) {
  if (!group) return null_group(ctx);
  return run_report(ctx, out, [&] { return rmaps::commands::run_cover_rank(group->spec, m, n, r, ctx->budgets); });
}

int rmaps_smooth_homology(rmaps_context* ctx, const rmaps_group* group, uint64_t m, uint64_t n, rmaps_report** out) {
  if (!group) return null_group(ctx);
  return run_report(ctx, out, [&] { return rmaps::commands::run_smooth_homology(group->spec, m, n, ctx->budgets); });
}

int rmaps_snf(rmaps_context* ctx, const char* matrix_text, rmaps_report** out) {
  if (!matrix_text) return RMAPS_E_NULL;
  return run_report(ctx, out, [&] { return rmaps::commands::run_snf(matrix_text); });
}

int rmaps_scan_pgl(rmaps_context* ctx, uint64_t q_bound, rmaps_report** out) {
  return run_report(ctx, out, [&] { return rmaps::commands::run_scan_pgl(q_bound); });
}

int rmaps_report_passed(const rmaps_report* report) { return report && report->report.pass ? 1 : 0; }

int rmaps_report_render(const rmaps_report* report, rmaps_format format, char** out) {
  if (!report || !out) return RMAPS_E_NULL;
  *out = nullptr;
  rmaps::commands::Format f;
  switch (format) {
    case RMAPS_FORMAT_JSON:
      f = rmaps::commands::Format::json;
      break;
    case RMAPS_FORMAT_TSV:
      f = rmaps::commands::Format::tsv;
      break;
    case RMAPS_FORMAT_TEXT:
      f = rmaps::commands::Format::text;
      break;
    default:
      return RMAPS_E_PARAMETER;
  }
  try {
    *out = dup_string(report->report.render(f));
    return RMAPS_OK;
  } catch (const std::bad_alloc&) {
    return RMAPS_E_RESOURCE;
  }
}

void rmaps_report_free(rmaps_report* report) { delete report; }

void rmaps_string_free(char* s) { std::free(s); }

}  // extern "C"
