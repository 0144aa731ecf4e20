// Command-line driver: exact optimal-approximant computations, orthogonal
// families, facial zero profiles, 2D recursive filters, weakly inner
// functions, closed-form diagonal families, and the embedded fixture suite.
//
// Exit codes: 0 success, 1 computation/check failure, 2 parse error (with
// position), 3 unsupported mode, 4 fixture integrity error.
#include <complex>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "opakit/closed_forms.hpp"
#include "opakit/filter2d.hpp"
#include "opakit/opa.hpp"
#include "opakit/ortho.hpp"
#include "opakit/zero_scan.hpp"

#include "criteria.hpp"

using json = nlohmann::ordered_json;
using namespace opakit;

namespace {

constexpr const char* kSchema = "opakit/1";

json poly_json(const MPoly& p) {
  json terms = json::array();
  for (const auto& [m, c] : p.terms()) {
    json t;
    t["monomial"] = m;
    t["coeff"] = c.str();
    t["coeff_float"] = {c.to_complex().real(), c.to_complex().imag()};
    terms.push_back(std::move(t));
  }
  json out;
  out["text"] = p.str();
  out["terms"] = std::move(terms);
  return out;
}

void emit(const json& j, const std::string& out_path) {
  std::string text = j.dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream os(out_path);
    os << text;
  }
}

void emit_text(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream os(out_path);
    os << text;
  }
}

std::string read_input(const std::string& inline_text, const std::string& path) {
  if (!path.empty()) {
    std::ifstream is(path);
    if (!is) throw std::invalid_argument("cannot open input file '" + path + "'");
    std::stringstream ss;
    ss << is.rdbuf();
    return ss.str();
  }
  // Inline data uses ';' as the row separator so it fits in one shell word.
  std::string text = inline_text;
  for (char& c : text)
    if (c == ';') c = '\n';
  return text;
}

// Points grammar: "(1/2,1/3);(1/4,-1/5)" with rational coordinates.
std::vector<std::vector<Rational>> parse_points(const std::string& text, int dim) {
  std::vector<std::vector<Rational>> pts;
  std::stringstream groups(text);
  std::string group;
  while (std::getline(groups, group, ';')) {
    if (group.empty()) continue;
    if (group.front() == '(' && group.back() == ')') group = group.substr(1, group.size() - 2);
    std::vector<Rational> p;
    std::stringstream coords(group);
    std::string c;
    while (std::getline(coords, c, ',')) p.push_back(Rational::parse(c));
    if (static_cast<int>(p.size()) != dim)
      throw std::invalid_argument("point '" + group + "' has wrong arity for the space");
    pts.push_back(std::move(p));
  }
  if (pts.empty()) throw std::invalid_argument("no points given");
  return pts;
}

json config_json(const SpaceSpec& s, const std::string& f, int n) {
  json cfg;
  cfg["space"] = s.str();
  if (!f.empty()) cfg["f"] = f;
  if (n >= 0) cfg["n"] = n;
  return cfg;
}

// ---------------------------------------------------------------------------
// Embedded fixture corpus. Each line: group|space|target|order|expected.
// The checksum guards against edits to the table after the expectations
// were frozen.

constexpr const char* kFixtureCorpus = R"(tables|dirichlet:0,0|2-z1-z2|0|1/3
tables|dirichlet:0,0|2-z1-z2|1|3/8+1/8*z1
tables|dirichlet:0,0|2-z1-z2|2|7/17+2/17*z1+2/17*z2
tables|dirichlet:0,0|2-z1-z2|3|93/223+30/223*z1+26/223*z2+10/223*z1^2
tables|dirichlet:0,0|2-z1-z2|4|897/2039+342/2039*z1+310/2039*z2+80/2039*z1^2+204/2039*z1*z2
tables|dirichlet:0,0|2-z1-z2|5|91/205+34/205*z1+34/205*z2+8/205*z1^2+20/205*z1*z2+8/205*z2^2
tables|dirichlet:1,1|2-z1-z2|0|1/4
tables|dirichlet:1,1|2-z1-z2|1|15/52+4/52*z1
tables|dirichlet:1,1|2-z1-z2|2|19/60+4/60*z1+4/60*z2
tables|dirichlet:1,1|2-z1-z2|3|2029/6324+484/6324*z1+412/6324*z2+132/6324*z1^2
tables|dirichlet:1,1|2-z1-z2|4|20941/60260+6092/60260*z1+5660/60260*z2+792/60260*z1^2+3188/60260*z1*z2
tables|dirichlet:1,1|2-z1-z2|5|479/1372+136/1372*z1+136/1372*z2+18/1372*z1^2+70/1372*z1*z2+18/1372*z2^2
tables|dirichlet:-1,-1|2-z1-z2|0|2/5
tables|dirichlet:-1,-1|2-z1-z2|1|62/143+24/143*z1
tables|dirichlet:-1,-1|2-z1-z2|2|34/73+12/73*z1+12/73*z2
tables|dirichlet:-1,-1|2-z1-z2|3|4502/9587+1764/9587*z1+1572/9587*z2+672/9587*z1^2
tables|dirichlet:-1,-1|2-z1-z2|4|7802/16211+3450/16211*z1+3138/16211*z2+1092/16211*z1^2+2334/16211*z1*z2
tables|dirichlet:-1,-1|2-z1-z2|5|750/1547+328/1547*z1+328/1547*z2+104/1547*z1^2+220/1547*z1*z2+104/1547*z2^2
ball|da:2|1-1/2*s2*z1-1/2*s2*z2|0|1/2
ball|da:2|1-1/2*s2*z1-1/2*s2*z2|1|7/12+1/6*s2*z1
ball|da:2|1-1/2*s2*z1-1/2*s2*z2|2|2/3+1/6*s2*z1+1/6*s2*z2
ball|da:2|1-1/2*s2*z1-1/2*s2*z2|3|33/48+5/24*s2*z1+1/6*s2*z2+1/8*z1^2
ball|da:2|1-1/2*s2*z1-1/2*s2*z2|4|35/48+1/4*s2*z1+5/24*s2*z2+1/8*z1^2+1/4*z1*z2
ball|da:2|1-1/2*s2*z1-1/2*s2*z2|5|3/4+1/4*s2*z1+1/4*s2*z2+1/8*z1^2+1/4*z1*z2+1/8*z2^2
diag|da:2|1-2*z1*z2|3|1/3
diag|da:2|1-2*z1*z2|4|7/15+2/5*z1*z2
diag|da:2|1-2*z1*z2|12|19/35+22/35*z1*z2+4/7*z1^2*z2^2
shanks|dirichlet:0,0|1-z1-z2-z1^2+4*z1*z2-z2^2+2*z1^3-2*z1^2*z2-2*z1*z2^2+2*z2^3-z1^3*z2+4*z1^2*z2^2-z1*z2^3-z1^3*z2^2-z1^2*z2^3|2|39/1165+23/1165*z1+23/1165*z2
shanks|dirichlet:-1,-1|-4+3*z1-z1^2+3*z2-2*z1*z2+z1^2*z2-z2^2+z1*z2^2|2|-5068/22545-96/835*z1-96/835*z2
)";

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

constexpr std::uint64_t kFixtureChecksum = 0x44b37c24e4f150feULL;

const char* kLedgerNotes[] = {
    "diagonal family, second window: the z1z2 coefficient is 2/5 by exact "
    "residual orthogonality (a circulating 2/15 variant fails it)",
    "two-variable ball family, order 3 and 5 differences: the z1^2 and z2^2 "
    "entries are 6/48, pinned by the printed approximant rows",
    "Hardy bidisk difference family, order 5: the z1 coefficient is "
    "-784/417995, pinned by the printed order-4/5 approximants",
    "Bergman bidisk difference family, order 3: recovered from the exact "
    "approximant rows; no independent tabulation is used",
    "bidisk two-point kernel determinant: the mixed term carries a factor "
    "conj(l1)conj(l2), fixed by K(l,l) - K_l(z)",
};

int cmd_fixtures(const std::string& filter) {
  std::string corpus(kFixtureCorpus);
  if (fnv1a(corpus) != kFixtureChecksum) {
    std::cerr << "fixture corpus failed its integrity check\n";
    return 4;
  }
  int passed = 0, skipped = 0;
  for (const auto& c : opakit_criteria::all_criteria())
    if (opakit_criteria::tag_match(c.tags, filter)) ++passed;
  int failed = opakit_criteria::run_all(filter);
  passed -= failed;
  std::stringstream in(corpus);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::stringstream ls(line);
    std::string fld;
    while (std::getline(ls, fld, '|')) fields.push_back(fld);
    if (fields.size() != 5) {
      std::cerr << "fixture corpus failed its integrity check (bad record)\n";
      return 4;
    }
    if (!filter.empty() && fields[0] != filter) {
      ++skipped;
      continue;
    }
    SpaceSpec s = parse_space(fields[1]);
    MPoly f = parse_mpoly(fields[2], s.dim());
    int n = std::stoi(fields[3]);
    MPoly want = parse_mpoly(fields[4], s.dim());
    bool ok = opa(s, f, n).approximant == want;
    std::printf("%s  %s | %s | n=%d\n", ok ? "PASS" : "FAIL", fields[0].c_str(),
                fields[2].c_str(), n);
    (ok ? passed : failed)++;
  }
  std::printf("%d passed, %d failed", passed, failed);
  if (skipped) std::printf(", %d filtered out", skipped);
  std::printf(", %zu ledger notes\n", std::size(kLedgerNotes));
  if (filter.empty())
    for (const char* note : kLedgerNotes) std::printf("note: %s\n", note);
  return failed ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact optimal polynomial approximants and related computations"};
  app.require_subcommand(1);

  std::string space_text = "dirichlet:0,0";
  std::string f_text, out_path;

  // opa --------------------------------------------------------------------
  auto* opa_cmd = app.add_subcommand("opa", "optimal approximant p_n^* to 1/f");
  int opa_n = 0, opa_from = -1;
  bool opa_float_mode = false;
  opa_cmd->add_option("--space", space_text, "space descriptor")->capture_default_str();
  opa_cmd->add_option("--f", f_text, "target polynomial")->required();
  opa_cmd->add_option("--n", opa_n, "order (deglex index cap)")->required();
  opa_cmd->add_option("--from", opa_from, "also emit every order from this index");
  opa_cmd->add_flag("--float", opa_float_mode, "force the float solver");
  opa_cmd->add_option("--out", out_path, "output file (default stdout)");

  // ortho ------------------------------------------------------------------
  auto* ortho_cmd = app.add_subcommand("ortho", "weighted orthogonal family and differences");
  int ortho_n = 0;
  ortho_cmd->add_option("--space", space_text, "space descriptor")->capture_default_str();
  ortho_cmd->add_option("--f", f_text, "weight polynomial")->required();
  ortho_cmd->add_option("--n", ortho_n, "family cap")->required();
  ortho_cmd->add_option("--out", out_path, "output file (default stdout)");

  // profile ----------------------------------------------------------------
  auto* prof_cmd = app.add_subcommand("profile", "facial root-modulus profile as CSV");
  std::string face_text = "z1";
  int prof_grid = 2048;
  prof_cmd->add_option("--f", f_text, "two-variable polynomial")->required();
  prof_cmd->add_option("--face", face_text, "variable swept on the torus: z1 or z2")
      ->check(CLI::IsMember({"z1", "z2"}))
      ->capture_default_str();
  prof_cmd->add_option("--grid", prof_grid, "torus sample count")->capture_default_str();
  prof_cmd->add_option("--out", out_path, "output file (default stdout)");

  // shapiro ----------------------------------------------------------------
  auto* ss_cmd = app.add_subcommand("shapiro", "weakly inner function vanishing on a point set");
  std::string points_text;
  int ss_trunc = 60;
  std::int64_t ss_jmax = 10;
  ss_cmd->add_option("--space", space_text, "space descriptor")->capture_default_str();
  ss_cmd->add_option("--points", points_text, "rational points, e.g. \"(1/2,1/3);(1/4,0)\"")
      ->required();
  ss_cmd->add_option("--trunc", ss_trunc, "truncation degree")->capture_default_str();
  ss_cmd->add_option("--jmax", ss_jmax, "weak-inner residual rows to verify")->capture_default_str();
  ss_cmd->add_option("--out", out_path, "output file (default stdout)");

  // closed-form ------------------------------------------------------------
  auto* cf_cmd = app.add_subcommand("closed-form", "closed-form approximant families");
  cf_cmd->require_subcommand(1);
  auto* cf_diag = cf_cmd->add_subcommand("diag", "diagonal-target family via the disk embedding");
  long cf_a1 = 0, cf_a2 = 0;
  int cf_ball_d = 0, cf_n = 0;
  cf_diag->add_option("--a1", cf_a1, "first weight exponent (bidisk)");
  cf_diag->add_option("--a2", cf_a2, "second weight exponent (bidisk)");
  cf_diag->add_option("--ball", cf_ball_d, "ball dimension (replaces --a1/--a2)");
  cf_diag->add_option("--n", cf_n, "diagonal order")->required();
  cf_diag->add_option("--out", out_path, "output file (default stdout)");
  auto* cf_rot = cf_cmd->add_subcommand("ball-rotation", "two-variable ball family via rotation");
  int cf_rot_n = 0;
  cf_rot->add_option("--n", cf_rot_n, "order (must end a total-degree block)")->required();
  cf_rot->add_option("--out", out_path, "output file (default stdout)");

  // filter -----------------------------------------------------------------
  auto* filt_cmd = app.add_subcommand("filter", "2D recursive filter operations");
  filt_cmd->require_subcommand(1);
  std::string a_text = "1", b_text = "1", data_text, data_path;
  int rows = 16, cols = 16, stab_n = 2, stab_grid = 2048;

  auto* filt_run = filt_cmd->add_subcommand("run", "run the output recursion on a data array");
  filt_run->add_option("--A", a_text, "numerator polynomial")->capture_default_str();
  filt_run->add_option("--B", b_text, "denominator polynomial")->capture_default_str();
  filt_run->add_option("--data", data_text, "input array as inline CSV");
  filt_run->add_option("--data-file", data_path, "input array CSV file");
  filt_run->add_option("--rows", rows, "output rows")->capture_default_str();
  filt_run->add_option("--cols", cols, "output cols")->capture_default_str();
  filt_run->add_option("--out", out_path, "output file (default stdout)");

  auto* filt_imp = filt_cmd->add_subcommand("impulse", "impulse response window");
  filt_imp->add_option("--A", a_text, "numerator polynomial")->capture_default_str();
  filt_imp->add_option("--B", b_text, "denominator polynomial")->capture_default_str();
  filt_imp->add_option("--rows", rows, "window rows")->capture_default_str();
  filt_imp->add_option("--cols", cols, "window cols")->capture_default_str();
  filt_imp->add_option("--out", out_path, "output file (default stdout)");

  auto* filt_chk = filt_cmd->add_subcommand("check", "stability of 1/B");
  filt_chk->add_option("--B", b_text, "denominator polynomial")->required();
  filt_chk->add_option("--grid", stab_grid, "torus sample count")->capture_default_str();
  filt_chk->add_option("--out", out_path, "output file (default stdout)");

  auto* filt_stab = filt_cmd->add_subcommand("stabilize", "approximant substitution for 1/B");
  filt_stab->add_option("--B", b_text, "denominator polynomial")->required();
  filt_stab->add_option("--n", stab_n, "approximant order")->capture_default_str();
  filt_stab->add_option("--grid", stab_grid, "torus sample count")->capture_default_str();
  filt_stab->add_option("--out", out_path, "output file (default stdout)");

  // fixtures ---------------------------------------------------------------
  auto* fix_cmd = app.add_subcommand("fixtures", "run the embedded regression corpus");
  std::string fix_filter;
  fix_cmd->add_option("--filter", fix_filter, "only run one fixture group");

  CLI11_PARSE(app, argc, argv);

  try {
    json out;
    out["schema"] = kSchema;

    if (*opa_cmd) {
      SpaceSpec s = parse_space(space_text);
      MPoly f = parse_mpoly(f_text, s.dim());
      out["config"] = config_json(s, f_text, opa_n);
      if (!s.exact() || opa_float_mode) {
        if (!opa_float_mode)
          throw ModeError("space has no exact weights; rerun with --float");
        auto r = opa_float(s, f, opa_n);
        json coeffs = json::array();
        for (auto& c : r.coeffs) coeffs.push_back({c.real(), c.imag()});
        out["mode"] = "float";
        out["coeffs"] = std::move(coeffs);
        out["condition_advisory"] = r.condition_advisory;
      } else {
        out["mode"] = "exact";
        json results = json::array();
        int lo = opa_from >= 0 ? opa_from : opa_n;
        for (int n = lo; n <= opa_n; ++n) {
          auto r = opa(s, f, n);
          json one;
          one["n"] = n;
          one["approximant"] = poly_json(r.approximant);
          one["nu2"] = r.nu2.str();
          one["nu"] = r.nu;
          results.push_back(std::move(one));
        }
        out["results"] = std::move(results);
      }
      emit(out, out_path);
      return 0;
    }

    if (*ortho_cmd) {
      SpaceSpec s = parse_space(space_text);
      MPoly f = parse_mpoly(f_text, s.dim());
      if (!s.exact()) throw ModeError("orthogonal families require exact weights");
      out["config"] = config_json(s, f_text, ortho_n);
      auto fam = weighted_gram_schmidt(s, f, ortho_n);
      auto seq = opa_sequence(s, f, ortho_n);
      auto diffs = opa_differences(seq);
      auto rec = verify_recovery(fam, diffs);
      json members = json::array(), diff_arr = json::array();
      for (const auto& m : fam.members) members.push_back(poly_json(m));
      for (const auto& d : diffs) diff_arr.push_back(poly_json(d));
      out["orthogonal_family"] = std::move(members);
      out["approximant_differences"] = std::move(diff_arr);
      out["recovery"] = {{"ok", rec.ok}, {"failing_n", rec.failing_n}, {"detail", rec.detail}};
      emit(out, out_path);
      return rec.ok ? 0 : 1;
    }

    if (*prof_cmd) {
      MPoly f = parse_mpoly(f_text, 2);
      auto prof = face_profile(f, face_text == "z1" ? 0 : 1, prof_grid);
      emit_text(prof.csv(), out_path);
      return 0;
    }

    if (*ss_cmd) {
      SpaceSpec s = parse_space(space_text);
      if (!s.exact()) throw ModeError("weakly inner construction requires exact weights");
      auto pts = parse_points(points_text, s.dim());
      auto ss = shapiro_shields(s, pts, ss_trunc);
      auto rep = ss_verify(ss, ss_jmax);
      out["config"] = config_json(s, "", -1);
      json pj = json::array();
      for (const auto& p : pts) {
        json one = json::array();
        for (const auto& c : p) one.push_back(c.str());
        pj.push_back(std::move(one));
      }
      out["points"] = std::move(pj);
      json cof = json::array();
      for (const auto& c : ss.cofactors) cof.push_back(c.str());
      out["cofactors"] = std::move(cof);
      out["trunc_degree"] = ss.trunc_degree;
      out["norm_tail_bound"] = ss.norm_tail;
      json rowsj = json::array();
      for (const auto& r : rep.weak_inner_rows)
        rowsj.push_back({{"j", r.j}, {"residual", r.residual}, {"bound", r.bound}});
      out["weak_inner_rows"] = std::move(rowsj);
      out["point_values"] = rep.point_values;
      out["point_bounds"] = rep.point_bounds;
      out["ok"] = rep.ok;
      emit(out, out_path);
      return rep.ok ? 0 : 1;
    }

    if (*cf_diag) {
      DiagEmbedResult r = cf_ball_d > 0 ? diag_embed_opa_ball(cf_ball_d, cf_n)
                                        : diag_embed_opa_bidisk(cf_a1, cf_a2, cf_n);
      out["config"] = {{"family", cf_ball_d > 0 ? "ball" : "bidisk"}, {"n", cf_n}};
      if (cf_ball_d > 0)
        out["config"]["d"] = cf_ball_d;
      else
        out["config"]["alpha"] = {cf_a1, cf_a2};
      out["approximant"] = poly_json(r.approximant);
      out["valid_from"] = r.valid_from;
      out["valid_to"] = r.valid_to;
      emit(out, out_path);
      return 0;
    }

    if (*cf_rot) {
      MPoly p = ball_rotation_opa(cf_rot_n);
      out["config"] = {{"n", cf_rot_n}};
      out["approximant"] = poly_json(p);
      emit(out, out_path);
      return 0;
    }

    if (*filt_run) {
      FilterSpec fs(parse_mpoly(a_text, 2), parse_mpoly(b_text, 2));
      DataArray data = DataArray::parse_csv(read_input(data_text, data_path));
      emit_text(run_recursion(fs, data, rows, cols).csv(), out_path);
      return 0;
    }

    if (*filt_imp) {
      FilterSpec fs(parse_mpoly(a_text, 2), parse_mpoly(b_text, 2));
      auto rep = impulse_response(fs, rows, cols);
      out["config"] = {{"A", a_text}, {"B", b_text}, {"rows", rows}, {"cols", cols}};
      out["max_abs"] = rep.max_abs;
      out["frame_decay"] = rep.frame_decay;
      out["response_csv"] = rep.response.csv();
      emit(out, out_path);
      return 0;
    }

    auto verdict_json = [](const StabilityVerdict& v) {
      json j;
      j["kind"] = v.kind == StabilityVerdict::Kind::Stable     ? "stable"
                  : v.kind == StabilityVerdict::Kind::Unstable ? "unstable"
                                                               : "inconclusive";
      j["grid"] = v.zero_scan.grid;
      j["margin"] = v.zero_scan.margin;
      j["face_min"] = {v.zero_scan.face_min[0], v.zero_scan.face_min[1]};
      if (v.zero_scan.kind == ZeroFreeVerdict::Kind::ZeroFound) {
        json w = json::array();
        for (auto& c : v.zero_scan.witness) w.push_back({c.real(), c.imag()});
        j["witness"] = std::move(w);
        j["witness_value"] = v.zero_scan.witness_value;
      }
      return j;
    };

    if (*filt_chk) {
      auto v = stability_check(parse_mpoly(b_text, 2), stab_grid);
      out["config"] = {{"B", b_text}, {"grid", stab_grid}};
      out["verdict"] = verdict_json(v);
      emit(out, out_path);
      return 0;
    }

    if (*filt_stab) {
      auto rep = stabilize(parse_mpoly(b_text, 2), stab_n, stab_grid);
      out["config"] = {{"B", b_text}, {"n", stab_n}, {"grid", stab_grid}};
      out["approximant"] = poly_json(rep.p_n_star);
      out["succeeded"] = rep.succeeded;
      out["original"] = verdict_json(rep.original_stability);
      out["substitute"] = verdict_json(rep.substitute_stability);
      out["original_frame_decay"] = rep.original_frame_decay;
      out["substitute_frame_decay"] = rep.substitute_frame_decay;
      emit(out, out_path);
      return 0;
    }

    if (*fix_cmd) return cmd_fixtures(fix_filter);
  } catch (const ParseError& e) {
    std::cerr << "parse error at position " << e.position << ": " << e.what() << "\n";
    return 2;
  } catch (const ModeError& e) {
    std::cerr << "mode error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
