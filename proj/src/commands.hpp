#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "rmaps/config.hpp"
#include "rmaps/mapcore.hpp"

namespace rmaps::commands {

using Json = nlohmann::json;

const char* version();

enum class Format { json, tsv, text };

struct Report {
  std::string command;
  Json config = Json::object();
  Json items = Json::array();
  // Extra sections shown in JSON and text output only.
  Json details = Json::object();
  bool pass = true;
  double seconds = 0;

  Json to_json() const;
  std::string render(Format f) const;
};

struct GroupSpec {
  std::string descriptor;
  // For a cell this is the base group H.
  PermGroup group;
  // Distinguished triple for h1, h2 and h3.
  std::optional<MapTriple> triple;
  struct Cell {
    PermGroup h0;
    std::uint64_t ell = 1;
  };
  std::optional<Cell> cell;

  BigNat order() const;
  // The group itself, materializing a cell when its ell is small enough.
  PermGroup materialize() const;
};

GroupSpec parse_group(const std::string& descriptor, const Budgets& budgets);

struct FamilyOptions {
  std::uint64_t max = 0, r = 0, alpha_max = 0, beta_max = 0;
};

Report run_verify(const GroupSpec& g, std::uint64_t m, std::uint64_t n, const Budgets& budgets);
Report run_census(const GroupSpec& g, const Budgets& budgets);
Report run_family(const std::string& row, const FamilyOptions& options, const Budgets& budgets);
Report run_tables(bool all, const Budgets& budgets);
Report run_corollary(std::uint64_t construct_cap, const Budgets& budgets);
Report run_cover_rank(const GroupSpec& g, std::uint64_t m, std::uint64_t n, std::uint64_t r, const Budgets& budgets);
Report run_smooth_homology(const GroupSpec& g, std::uint64_t m, std::uint64_t n, const Budgets& budgets);
Report run_snf(const std::string& matrix_text);
Report run_scan_pgl(std::uint64_t q_bound);

}  // namespace rmaps::commands
