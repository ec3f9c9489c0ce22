#include "conelab/catalog.hpp"
#include "conelab/cone.hpp"
#include "conelab/delpezzo.hpp"
#include "conelab/error.hpp"
#include "conelab/pqsurf.hpp"
#include "conelab/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fnmatch.h>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace conelab;

namespace {

std::vector<Vector> read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::invalid_argument, "cannot open " + path);
  std::vector<Vector> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    Vector row;
    std::string tok;
    while (ls >> tok) row.push_back(parse_rational(tok));
    if (!row.empty()) rows.push_back(std::move(row));
  }
  return rows;
}

std::string row_text(const Vector& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + to_string(v[i]);
  return s;
}

nlohmann::json row_json(const Vector& v) {
  nlohmann::json a = nlohmann::json::array();
  for (const auto& x : v) a.push_back(to_string(x));
  return a;
}

Catalog selected(const std::string& path, bool lenient, const std::string& filter) {
  Catalog cat = load_catalog(path.empty() ? default_catalog_path() : std::filesystem::path(path),
                             lenient ? LoadMode::lenient : LoadMode::strict);
  for (const auto& w : cat.warnings) std::cerr << "warning: " << w << "\n";
  if (!filter.empty()) {
    std::erase_if(cat.entries, [&](const SurfaceEntry& e) { return fnmatch(filter.c_str(), e.id.c_str(), 0) != 0; });
  }
  return cat;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"conelab: exact cone and intersection computations on surface lattices"};
  app.require_subcommand(1, 1);

  std::string catalog_path, filter, format = "text";
  bool strict = false, lenient = false;
  auto catalog_opts = [&](CLI::App* sub) {
    sub->add_option("--catalog", catalog_path, "catalogue file (default: $CONELAB_CATALOG or bundled)");
    sub->add_option("--filter", filter, "entry id glob");
    sub->add_flag("--strict", strict, "reject unknown fields (default)");
    sub->add_flag("--lenient", lenient, "warn about unknown fields instead");
  };
  auto format_opt = [&](CLI::App* sub) {
    sub->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));
  };

  auto* verify = app.add_subcommand("verify", "verify catalogue entries");
  catalog_opts(verify);
  format_opt(verify);
  auto* table = app.add_subcommand("table", "negative-curve table");
  catalog_opts(table);
  format_opt(table);

  std::string gram_path, rays_path;
  auto* dual = app.add_subcommand("dual", "dual cone of a ray matrix under a Gram matrix");
  dual->add_option("--gram", gram_path, "Gram matrix file")->required();
  dual->add_option("--rays", rays_path, "ray matrix file, one ray per line")->required();
  format_opt(dual);

  int r = 0;
  std::string type;
  auto* enumerate = app.add_subcommand("enumerate", "(-1)- or (-2)-classes on the blow-up at r points");
  enumerate->add_option("--r", r, "number of points, 1..8")->required();
  enumerate->add_option("--type", type, "minus1 or minus2")->required()->check(CLI::IsMember({"minus1", "minus2"}));
  format_opt(enumerate);

  long n = 0, k = 0;
  auto* hj = app.add_subcommand("hj", "Hirzebruch-Jung string of 1/n(1,k)");
  hj->add_option("n", n)->required();
  hj->add_option("k", k)->required();
  format_opt(hj);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  if (strict && lenient) {
    std::cerr << "error: --strict and --lenient are exclusive\n";
    return 2;
  }
  const bool json_out = format == "json";

  try {
    if (*verify || *table) {
      Catalog cat = selected(catalog_path, lenient, filter);
      auto reports = verify_catalog(cat);
      bool ok = std::all_of(reports.begin(), reports.end(), [](const auto& rep) { return rep.pass(); });
      if (*verify) {
        std::cout << (json_out ? reports_to_json(reports) : reports_to_text(reports));
        if (!json_out) std::cout << reports.size() << " entries, " << (ok ? "all pass" : "FAILURES") << "\n";
        return ok ? 0 : 1;
      }
      if (!ok) {
        for (const auto& rep : reports)
          if (!rep.pass()) std::cerr << "error: entry " << rep.id << " did not verify\n";
        return 1;
      }
      if (json_out) {
        nlohmann::json a = nlohmann::json::array();
        for (const auto& rep : reports) {
          nlohmann::json neg = nlohmann::json::array();
          for (const auto& c : rep.negatives) neg.push_back({c.self_int, c.genus, c.multiplicity});
          a.push_back({{"id", rep.id}, {"K2", rep.k2}, {"b_X", rep.b_x}, {"negatives", neg},
                       {"text", format_negatives(rep.negatives)}});
        }
        std::cout << nlohmann::json{{"table", a}}.dump(2) << "\n";
      } else {
        std::cout << negative_curve_table(reports);
      }
      return 0;
    }
    if (*dual) {
      auto g = read_matrix_file(gram_path);
      auto rays = read_matrix_file(rays_path);
      if (g.empty()) throw Error(ErrorCode::invalid_argument, "empty Gram matrix");
      Matrix gram = Matrix::from_rows(g, g.front().size());
      auto lat = std::make_shared<const SurfaceLattice>(gram, std::vector<std::string>{});
      std::vector<DivisorClass> gens;
      for (auto& row : rays) {
        DivisorClass c(std::move(row));
        lat->require_conforming(c);
        gens.push_back(std::move(c));
      }
      Cone d = dual_cone(Cone(lat, gens));
      const ConeFrame& f = d.frame();
      if (json_out) {
        nlohmann::json jr = nlohmann::json::array(), jl = nlohmann::json::array();
        for (const auto& x : f.rays) jr.push_back(row_json(x.coeffs()));
        for (const auto& x : f.lineality) jl.push_back(row_json(x.coeffs()));
        std::cout << nlohmann::json{{"rays", jr}, {"lineality", jl}}.dump(2) << "\n";
      } else {
        for (const auto& x : f.rays) std::cout << row_text(x.coeffs()) << "\n";
        for (const auto& x : f.lineality) std::cout << "lineality: " << row_text(x.coeffs()) << "\n";
      }
      return 0;
    }
    if (*enumerate) {
      BlowupLattice bl = build_blowup_lattice(r);
      auto classes = type == "minus1" ? enumerate_classes(bl, -1, -1) : enumerate_classes(bl, -2, 0);
      if (json_out) {
        nlohmann::json a = nlohmann::json::array();
        for (const auto& c : classes)
          a.push_back({{"label", blowup_curve_label(c)}, {"class", format_blowup_class(c)}, {"coefficients", row_json(c.coeffs())}});
        std::cout << nlohmann::json{{"r", r}, {"type", type}, {"count", classes.size()}, {"classes", a}}.dump(2) << "\n";
      } else {
        for (const auto& c : classes) std::cout << blowup_curve_label(c) << "\t" << format_blowup_class(c) << "\n";
        std::cout << classes.size() << " classes\n";
      }
      return 0;
    }
    if (*hj) {
      HJString s = hj_expansion(n, k);
      std::string text = "[";
      for (std::size_t i = 0; i < s.coefficients.size(); ++i) text += (i ? ", " : "") + std::to_string(s.coefficients[i]);
      text += "]";
      if (json_out) {
        std::cout << nlohmann::json{{"n", n}, {"k", k}, {"string", s.coefficients}}.dump(2) << "\n";
      } else {
        std::cout << text << "\n";
      }
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
