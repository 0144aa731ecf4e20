#include <catch2/catch_amalgamated.hpp>

#include "opakit/ortho.hpp"

using namespace opakit;

namespace {

MPoly P2(const std::string& s) { return parse_mpoly(s, 2); }

void check_difference_table(const SpaceSpec& s, const MPoly& f,
                            const std::vector<std::pair<int, std::string>>& table, int cap) {
  auto seq = opa_sequence(s, f, cap);
  auto diffs = opa_differences(seq);
  for (const auto& [n, text] : table) {
    INFO("difference at n=" << n);
    CHECK(diffs[static_cast<std::size_t>(n)] == P2(text));
  }
  auto fam = weighted_gram_schmidt(s, f, cap);
  auto rep = verify_recovery(fam, diffs);
  INFO(rep.detail << " at n=" << rep.failing_n);
  CHECK(rep.ok);
}

}  // namespace

TEST_CASE("gram-schmidt members are monic and orthogonal") {
  SpaceSpec s = SpaceSpec::dirichlet_bidisk(0, 0);
  MPoly f = P2("2-z1-z2");
  auto fam = weighted_gram_schmidt(s, f, 9);
  for (int k = 0; k <= 9; ++k) {
    CHECK(fam.members[k].coeff(deglex_unrank(k, 2)) == ExactScalar(1));
    for (int j = 0; j < k; ++j)
      CHECK(s.weighted_inner(f, fam.members[k], fam.members[j]).is_zero());
  }
}

TEST_CASE("difference table, hardy bidisk, 2 - z1 - z2") {
  check_difference_table(
      SpaceSpec::dirichlet_bidisk(0, 0), P2("2-z1-z2"),
      {{1, "1/24+1/8*z1"},
       {2, "5/136-1/136*z1+2/17*z2"},
       {3, "20/3791+64/3791*z1-4/3791*z2+170/3791*z1^2"},
       {4, "10404/454697+15096/454697*z1+16116/454697*z2-2550/454697*z1^2+45492/454697*z1*z2"},
       // The z1 entry follows from the exact n=4 and n=5 approximants; the
       // recovery dichotomy below arbitrates it.
       {5, "1664/417995-784/417995*z1+5776/417995*z2-88/417995*z1^2-1040/417995*z1*z2+16312/417995*z2^2"}},
      5);
}

TEST_CASE("difference table, dirichlet bidisk, 2 - z1 - z2") {
  check_difference_table(
      SpaceSpec::dirichlet_bidisk(1, 1), P2("2-z1-z2"),
      {{1, "1/26+2/26*z1"},
       {2, "11/390-4/390*z1+26/390*z2"},
       {3, "11/2635+26/2635*z1-4/2635*z2+55/2635*z1^2"},
       {4, "635209/23817765+584998/23817765*z1+685420/23817765*z2-184107/23817765*z1^2"
           "+1260057/23817765*z1*z2"},
       {5, "16686/10334590-20358/10334590*z1+53730/10334590*z2-243/10334590*z1^2"
           "-19467/10334590*z1*z2+135585/10334590*z2^2"}},
      5);
}

TEST_CASE("difference table, bergman bidisk, 2 - z1 - z2") {
  // The degree-3 entry is checked only through the recovery dichotomy.
  check_difference_table(
      SpaceSpec::dirichlet_bidisk(-1, -1), P2("2-z1-z2"),
      {{1, "24/715+120/715*z1"},
       {2, "336/10439-36/10439*z1+1716/10439*z2"},
       {4, "1815852/155414857+4478946/155414857*z1+4600314/155414857*z2"
           "-424788/155414857*z1^2+22376058/155414857*z1*z2"},
       {5, "524/148393-118/148393*z1+2738/148393*z2-20/148393*z1^2"
           "-262/148393*z1*z2+9976/148393*z2^2"}},
      5);
}

TEST_CASE("difference table, drury-arveson, 1 - (z1+z2)/sqrt2") {
  check_difference_table(
      SpaceSpec::drury_arveson(2), P2("1-1/2*s2*z1-1/2*s2*z2"),
      {{1, "1/12+1/6*s2*z1"},
       {2, "1/12+1/6*s2*z2"},
       {3, "1/48+1/24*s2*z1+1/8*z1^2"},
       {4, "1/24+1/24*s2*z1+1/24*s2*z2+1/4*z1*z2"},
       {5, "1/48+1/24*s2*z2+1/8*z2^2"},
       {6, "1/160+1/80*s2*z1+3/80*z1^2+1/20*s2*z1^3"},
       {7, "3/160+1/40*s2*z1+1/80*s2*z2+3/80*z1^2+3/40*z1*z2+3/20*s2*z1^2*z2"},
       {8, "3/160+1/80*s2*z1+1/40*s2*z2+3/40*z1*z2+3/80*z2^2+3/20*s2*z1*z2^2"},
       {9, "1/160+1/80*s2*z2+3/80*z2^2+1/20*s2*z2^3"}},
      9);
}

TEST_CASE("drury-arveson approximants for 1 - (z1+z2)/sqrt2") {
  MPoly f = P2("1-1/2*s2*z1-1/2*s2*z2");
  auto seq = opa_sequence(SpaceSpec::drury_arveson(2), f, 5);
  CHECK(seq[0].approximant == P2("1/2"));
  CHECK(seq[1].approximant == P2("7/12+1/6*s2*z1"));
  CHECK(seq[2].approximant == P2("2/3+1/6*s2*z1+1/6*s2*z2"));
  CHECK(seq[3].approximant == P2("33/48+5/24*s2*z1+1/6*s2*z2+1/8*z1^2"));
  CHECK(seq[4].approximant == P2("35/48+1/4*s2*z1+5/24*s2*z2+1/8*z1^2+1/4*z1*z2"));
  CHECK(seq[5].approximant == P2("3/4+1/4*s2*z1+1/4*s2*z2+1/8*z1^2+1/4*z1*z2+1/8*z2^2"));
}

TEST_CASE("weighted inner product vanishes off the diagonal offset") {
  // For weights that are polynomials in z1 z2, monomial classes of different
  // degree offsets deg_z1 - deg_z2 stay orthogonal.
  std::vector<SpaceSpec> spaces{SpaceSpec::dirichlet_bidisk(0, 0),
                                SpaceSpec::dirichlet_bidisk(1, 1),
                                SpaceSpec::dirichlet_bidisk(-1, -1)};
  MPoly f = P2("1-z1*z2");
  for (const auto& s : spaces)
    for (int a = 0; a <= 5; ++a)
      for (int b = 0; b <= 5; ++b)
        for (int c = 0; c <= 5; ++c)
          for (int e = 0; e <= 5; ++e) {
            if (a - b == c - e) continue;
            ExactScalar ip = s.weighted_inner(f, MPoly::monomial(2, {a, b}),
                                              MPoly::monomial(2, {c, e}));
            CHECK(ip.is_zero());
          }
}

TEST_CASE("diagonal weight structure across spaces") {
  for (const char* ftext : {"1-z1*z2", "2-z1*z2", "1-1/2*z1*z2+1/3*z1^2*z2^2"})
    for (const auto& s : {SpaceSpec::dirichlet_bidisk(0, 0), SpaceSpec::dirichlet_bidisk(1, 1),
                          SpaceSpec::dirichlet_bidisk(-1, -1)}) {
      auto rows = diagonal_structure(s, P2(ftext), 14);
      for (const auto& row : rows) {
        MultiIndex lead = deglex_unrank(row.index, 2);
        CHECK(row.gap == std::abs(lead[0] - lead[1]));
        CHECK(row.r.coeff({row.r.degree()}) == ExactScalar(1));
      }
    }
  CHECK_THROWS_AS(diagonal_structure(SpaceSpec::dirichlet_bidisk(0, 0), P2("2-z1-z2"), 3),
                  std::invalid_argument);
}

TEST_CASE("hardy orthogonal polynomials for 1 - z1 z2 in closed form") {
  SpaceSpec s = SpaceSpec::dirichlet_bidisk(0, 0);
  MPoly f = P2("1-z1*z2");
  auto fam = weighted_gram_schmidt(s, f, 14);
  for (std::int64_t N = 0; N <= 14; ++N) {
    MultiIndex lead = deglex_unrank(N, 2);
    int axis = lead[0] >= lead[1] ? 0 : 1;
    int M = std::abs(lead[0] - lead[1]);
    int m = std::min(lead[0], lead[1]);
    CHECK(fam.members[static_cast<std::size_t>(N)] == hardy_diag_basis(axis, M, m));
  }
}

TEST_CASE("closed-form diagonal basis is orthogonal") {
  SpaceSpec s = SpaceSpec::dirichlet_bidisk(0, 0);
  MPoly f = P2("1-z1*z2");
  struct Key { int axis, M, m; };
  std::vector<Key> keys;
  for (int axis : {0, 1})
    for (int M = axis; M <= 3; ++M)
      for (int m = 0; m <= 4; ++m) keys.push_back({axis, M, m});
  for (std::size_t i = 0; i < keys.size(); ++i)
    for (std::size_t j = 0; j < i; ++j) {
      MPoly a = hardy_diag_basis(keys[i].axis, keys[i].M, keys[i].m);
      MPoly b = hardy_diag_basis(keys[j].axis, keys[j].M, keys[j].m);
      CHECK(s.weighted_inner(f, a, b).is_zero());
    }
}

TEST_CASE("hardy diag r values") {
  CHECK(hardy_diag_r(0) == parse_mpoly("1", 1));
  CHECK(hardy_diag_r(1) == parse_mpoly("1/2+z", 1));
  CHECK(hardy_diag_r(3) == parse_mpoly("1/4+1/2*z+3/4*z^2+z^3", 1));
}
