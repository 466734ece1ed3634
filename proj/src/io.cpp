#include "copclust/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include "copclust/error.hpp"

namespace copclust {

void RunConfig::validate() const {
  penalty().validate();
  if (calibration == Calibration::permutation && permutation_B < 99) {
    throw InputError("permutation calibration needs permutation_B >= 99");
  }
}

PenaltyConfig RunConfig::penalty() const {
  PenaltyConfig cfg;
  cfg.alpha_factor = alpha_factor.value_or(1.0);
  cfg.d_max = d_max;
  cfg.level = level;
  cfg.calibration = calibration;
  cfg.permutation_B = permutation_B;
  cfg.seed = seed;
  return cfg;
}

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(',', start);
    out.push_back(trim(std::string_view(line).substr(start, pos - start)));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return out;
}

std::string where(const std::string& source, std::size_t line) {
  return source + ":" + std::to_string(line);
}

double parse_value(const std::string& text, const std::string& source, std::size_t line) {
  double v = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end || !std::isfinite(v)) {
    throw InputError(where(source, line) + ": invalid numeric value '" + text + "'");
  }
  return v;
}

bool is_integer(const std::string& s) {
  if (s.empty()) return false;
  const std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  return start < s.size() &&
         std::all_of(s.begin() + start, s.end(), [](unsigned char c) { return std::isdigit(c); });
}

struct RawRow {
  std::string obs_id;
  std::vector<std::string> cells;
  std::string source;
  std::size_t line = 0;
};

struct RawPopulation {
  std::string label;
  std::vector<RawRow> rows;
};

void check_duplicates(const RawPopulation& pop) {
  std::map<std::string, const RawRow*> seen;
  for (const auto& r : pop.rows) {
    const auto [it, fresh] = seen.emplace(r.obs_id, &r);
    if (!fresh) {
      throw InputError(where(r.source, r.line) + ": duplicate obs_id '" + r.obs_id +
                       "' in population '" + pop.label + "' (first at line " +
                       std::to_string(it->second->line) + ")");
    }
  }
}

/// Columns that are blank on every row of a population make its dimension
/// differ from the others; isolated blanks are missing values.
void check_cells(const std::vector<RawPopulation>& pops, std::size_t width) {
  std::vector<std::vector<bool>> present(pops.size(), std::vector<bool>(width, false));
  for (std::size_t k = 0; k < pops.size(); ++k) {
    for (const auto& r : pops[k].rows)
      for (std::size_t c = 0; c < width; ++c)
        if (!r.cells[c].empty()) present[k][c] = true;
  }
  for (std::size_t k = 0; k < pops.size(); ++k) {
    for (std::size_t k2 = 0; k2 < pops.size(); ++k2) {
      if (present[k] == present[k2]) continue;
      const std::size_t dk = std::count(present[k].begin(), present[k].end(), true);
      const std::size_t dk2 = std::count(present[k2].begin(), present[k2].end(), true);
      const std::size_t narrow = dk <= dk2 ? k : k2, wide = dk <= dk2 ? k2 : k;
      const auto& first = pops[narrow].rows.front();
      throw InputError(where(first.source, first.line) + ": ragged dimension: population '" +
                       pops[narrow].label + "' has " + std::to_string(std::min(dk, dk2)) +
                       " value columns, '" + pops[wide].label + "' has " +
                       std::to_string(std::max(dk, dk2)));
    }
  }
  for (const auto& pop : pops) {
    for (const auto& r : pop.rows) {
      for (std::size_t c = 0; c < width; ++c) {
        if (r.cells[c].empty()) {
          throw InputError(where(r.source, r.line) + ": missing value in column " +
                           std::to_string(c + 1) + " of population '" + pop.label + "'");
        }
      }
    }
  }
}

Dataset build(std::vector<RawPopulation> pops, std::size_t width, Pairing pairing) {
  if (pops.empty()) throw InputError("input contains no observations");
  if (width == 0) throw InputError("input has no value columns");
  for (const auto& pop : pops) check_duplicates(pop);
  check_cells(pops, width);

  bool numeric = true;
  for (const auto& pop : pops)
    for (const auto& r : pop.rows) numeric = numeric && is_integer(r.obs_id);
  auto less = [numeric](const RawRow& a, const RawRow& b) {
    if (numeric) return std::stoll(a.obs_id) < std::stoll(b.obs_id);
    return a.obs_id < b.obs_id;
  };

  if (pairing == Pairing::paired) {
    std::set<std::string> reference;
    for (const auto& r : pops.front().rows) reference.insert(r.obs_id);
    for (std::size_t k = 1; k < pops.size(); ++k) {
      std::set<std::string> ids;
      for (const auto& r : pops[k].rows) {
        ids.insert(r.obs_id);
        if (!reference.count(r.obs_id)) {
          throw InputError(where(r.source, r.line) + ": pairing mismatch: obs_id '" + r.obs_id +
                           "' of population '" + pops[k].label + "' is absent from '" +
                           pops.front().label + "'");
        }
      }
      for (const auto& r : pops.front().rows) {
        if (!ids.count(r.obs_id)) {
          throw InputError(where(r.source, r.line) + ": pairing mismatch: obs_id '" + r.obs_id +
                           "' is absent from population '" + pops[k].label + "'");
        }
      }
    }
  }

  Dataset ds;
  for (auto& raw : pops) {
    std::stable_sort(raw.rows.begin(), raw.rows.end(), less);
    Population pop;
    pop.label = raw.label;
    pop.data = Matrix(raw.rows.size(), width);
    for (std::size_t i = 0; i < raw.rows.size(); ++i) {
      const auto& r = raw.rows[i];
      pop.obs_ids.push_back(r.obs_id);
      for (std::size_t c = 0; c < width; ++c) pop.data(i, c) = parse_value(r.cells[c], r.source, r.line);
    }
    if (pairing == Pairing::paired) pop.paired_group = "paired";
    ds.populations.push_back(std::move(pop));
  }
  ds.validate();
  return ds;
}

std::vector<std::string> read_header(std::istream& in, const std::string& source,
                                     std::size_t& line_no) {
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    if (!trim(line).empty()) return split_csv(line);
  }
  throw InputError(source + ": empty file, expected a header row");
}

}  // namespace

Dataset read_long_csv(std::istream& in, const std::string& source, Pairing pairing) {
  std::size_t line_no = 0;
  const auto header = read_header(in, source, line_no);
  if (header.size() < 3 || header[0] != "population" || header[1] != "obs_id") {
    throw InputError(where(source, line_no) +
                     ": expected header 'population,obs_id,var_1,...,var_p'");
  }
  const std::size_t width = header.size() - 2;
  std::vector<RawPopulation> pops;
  std::map<std::string, std::size_t> index;
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    auto cells = split_csv(line);
    if (cells.size() != header.size()) {
      throw InputError(where(source, line_no) + ": ragged dimension: expected " +
                       std::to_string(header.size()) + " fields, found " +
                       std::to_string(cells.size()));
    }
    if (cells[0].empty()) throw InputError(where(source, line_no) + ": missing population label");
    if (cells[1].empty()) throw InputError(where(source, line_no) + ": missing obs_id");
    const auto [it, fresh] = index.emplace(cells[0], pops.size());
    if (fresh) pops.push_back({cells[0], {}});
    RawRow row{cells[1], std::vector<std::string>(cells.begin() + 2, cells.end()), source, line_no};
    pops[it->second].rows.push_back(std::move(row));
  }
  return build(std::move(pops), width, pairing);
}

Dataset ingest(const std::filesystem::path& path, InputFormat format, Pairing pairing) {
  namespace fs = std::filesystem;
  if (format == InputFormat::long_csv) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open '" + path.string() + "'");
    return read_long_csv(in, path.string(), pairing);
  }
  if (!fs::is_directory(path)) throw InputError("'" + path.string() + "' is not a directory");
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(path)) {
    if (e.is_regular_file() && e.path().extension() == ".csv") files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) throw InputError("no .csv files in '" + path.string() + "'");

  std::vector<RawPopulation> pops;
  std::optional<std::size_t> width;
  for (const auto& f : files) {
    std::ifstream in(f);
    if (!in) throw InputError("cannot open '" + f.string() + "'");
    const std::string source = f.string();
    std::size_t line_no = 0;
    const auto header = read_header(in, source, line_no);
    if (header.size() < 2 || header[0] != "obs_id") {
      throw InputError(where(source, line_no) + ": expected header 'obs_id,<value columns>'");
    }
    if (width && *width != header.size() - 1) {
      throw InputError(where(source, line_no) + ": ragged dimension: " +
                       std::to_string(header.size() - 1) + " value columns, expected " +
                       std::to_string(*width));
    }
    width = header.size() - 1;
    RawPopulation pop{f.stem().string(), {}};
    std::string line;
    while (std::getline(in, line)) {
      ++line_no;
      if (trim(line).empty()) continue;
      auto cells = split_csv(line);
      if (cells.size() != header.size()) {
        throw InputError(where(source, line_no) + ": ragged dimension: expected " +
                         std::to_string(header.size()) + " fields, found " +
                         std::to_string(cells.size()));
      }
      if (cells[0].empty()) throw InputError(where(source, line_no) + ": missing obs_id");
      pop.rows.push_back({cells[0], std::vector<std::string>(cells.begin() + 1, cells.end()),
                          source, line_no});
    }
    if (pop.rows.empty()) throw InputError(source + ": no observations");
    pops.push_back(std::move(pop));
  }
  return build(std::move(pops), *width, pairing);
}

std::string format_double(double x) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

void write_long_csv(std::ostream& out, const Dataset& dataset) {
  out << "population,obs_id";
  for (std::size_t c = 0; c < dataset.dim(); ++c) out << ",var_" << c + 1;
  out << '\n';
  for (const auto& pop : dataset.populations) {
    for (std::size_t i = 0; i < pop.size(); ++i) {
      out << pop.label << ',' << (pop.obs_ids.empty() ? std::to_string(i + 1) : pop.obs_ids[i]);
      for (std::size_t c = 0; c < pop.dim(); ++c) out << ',' << format_double(pop.data(i, c));
      out << '\n';
    }
  }
}

std::vector<double> log_returns(std::span<const double> prices) {
  if (prices.size() < 2) throw InputError("log returns need at least two prices");
  for (std::size_t t = 0; t < prices.size(); ++t) {
    if (!(prices[t] > 0.0)) {
      throw DomainError("non-positive price " + format_double(prices[t]) + " at position " +
                        std::to_string(t + 1));
    }
  }
  std::vector<double> r(prices.size() - 1);
  for (std::size_t t = 0; t + 1 < prices.size(); ++t) r[t] = std::log(prices[t + 1] / prices[t]);
  return r;
}

Dataset apply_log_returns(const Dataset& dataset) {
  Dataset out;
  for (const auto& pop : dataset.populations) {
    Population q;
    q.label = pop.label;
    q.paired_group = pop.paired_group;
    q.data = Matrix(pop.size() - 1, pop.dim());
    for (std::size_t c = 0; c < pop.dim(); ++c) {
      std::vector<double> col(pop.size());
      for (std::size_t i = 0; i < pop.size(); ++i) col[i] = pop.data(i, c);
      std::vector<double> r;
      try {
        r = log_returns(col);
      } catch (const InputError& e) {
        throw DomainError("population '" + pop.label + "', column " + std::to_string(c + 1) +
                          ": " + e.what());
      }
      for (std::size_t i = 0; i < r.size(); ++i) q.data(i, c) = r[i];
    }
    if (!pop.obs_ids.empty()) q.obs_ids.assign(pop.obs_ids.begin() + 1, pop.obs_ids.end());
    out.populations.push_back(std::move(q));
  }
  return out;
}

}  // namespace copclust
