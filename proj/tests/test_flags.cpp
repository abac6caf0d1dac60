#include <catch2/catch_amalgamated.hpp>

#include <vector>

#include "qpsiegel/curve.hpp"
#include "qpsiegel/flags.hpp"
#include "test_util.hpp"

using namespace qps;

namespace {

// all compositions of r into positive parts
std::vector<FlagType> all_flag_types(int r) {
    std::vector<FlagType> out;
    std::vector<int> acc;
    const auto rec = [&](auto&& self, int left) -> void {
        if (left == 0) {
            out.push_back(FlagType{acc});
            return;
        }
        for (int part = 1; part <= left; ++part) {
            acc.push_back(part);
            self(self, left - part);
            acc.pop_back();
        }
    };
    rec(rec, r);
    return out;
}

} // namespace

TEST_CASE("Gaussian binomials") {
    CHECK(gaussian_binomial(2, 1, 2) == 3);
    CHECK(gaussian_binomial(4, 2, 2) == 35);
    CHECK(gaussian_binomial(5, 0, 3) == 1);
}

TEST_CASE("q-Pascal identity") {
    for (long q : {2L, 3L})
        for (int n = 1; n <= 8; ++n)
            for (int k = 1; k <= n - 1; ++k)
                CHECK(gaussian_binomial(n, k, q) ==
                      gaussian_binomial(n - 1, k - 1, q) +
                          int_pow(Int(q), k) * gaussian_binomial(n - 1, k, q));
}

TEST_CASE("flag counts") {
    CHECK(flag_count(QuasiParabolicData{2, {FlagType{{1, 1}}}}, 2) == 3);
    CHECK(flag_count(QuasiParabolicData{3, {FlagType{{1, 1, 1}}}}, 2) == 21);
    CHECK(flag_count(QuasiParabolicData{2, {FlagType{{1, 1}}, FlagType{{1, 1}}}}, 3) == 16);
    CHECK(flag_count(QuasiParabolicData{4, {}}, 2) == 1); // no marked points
}

TEST_CASE("flag count is the product over marked points") {
    for (long q : {2L, 3L})
        for (const FlagType& a : all_flag_types(3))
            for (const FlagType& b : all_flag_types(3)) {
                const QuasiParabolicData joint{3, {a, b}};
                CHECK(flag_count(joint, q) ==
                      flag_count_single(a, q) * flag_count_single(b, q));
            }
}

TEST_CASE("trivial flag types count one flag") {
    for (int r = 1; r <= 4; ++r)
        CHECK(flag_count(trivial_parabolic_data(r, 3), 5) == 1);
}

TEST_CASE("flag enumeration matches the closed-form counts") {
    CHECK(enumerate_flags(FlagType{{1, 1}}, 2).size() == 3);
    CHECK(enumerate_flags(FlagType{{3}}, 2).size() == 1);
    CHECK(enumerate_flags(FlagType{{3}}, 2)[0].empty()); // only 0 and the whole space
    CHECK(enumerate_flags(FlagType{{2, 1}}, 2).size() == 7);

    for (int q : {2, 3})
        for (int r = 1; r <= 4; ++r)
            for (const FlagType& type : all_flag_types(r))
                CHECK(Int(static_cast<long long>(enumerate_flags(type, q).size())) ==
                      flag_count_single(type, q));
}

TEST_CASE("enumerated flags are strictly descending chains of the right shape") {
    for (const Flag& flag : enumerate_flags(FlagType{{1, 2, 1}}, 2)) {
        REQUIRE(flag.size() == 2);
        CHECK(flag[0].rows == 3); // 4 - 1
        CHECK(flag[1].rows == 1); // 3 - 2
        // containment: each basis row of the smaller space lies in the larger
        FpMatrix stacked(flag[0].rows + flag[1].rows, 4, 2);
        for (int i = 0; i < flag[0].rows; ++i)
            for (int j = 0; j < 4; ++j)
                stacked.at(i, j) = flag[0].at(i, j);
        for (int i = 0; i < flag[1].rows; ++i)
            for (int j = 0; j < 4; ++j)
                stacked.at(flag[0].rows + i, j) = flag[1].at(i, j);
        CHECK(mat_rank(stacked) == flag[0].rows);
    }
}

TEST_CASE("parabolic validation") {
    const CurveData curve = make_curve(2, 0, Polynomial::one(), 1);
    validate_parabolic(QuasiParabolicData{2, {FlagType{{1, 1}}}}, curve); // passes

    CHECK(error_kind([&] {
              validate_parabolic(QuasiParabolicData{2, {FlagType{{1, 1}}, FlagType{{2}}}},
                                 curve);
          }) == "PointCountMismatch");
    CHECK(error_kind([&] {
              const CurveData one_point = make_curve(2, 0, Polynomial::one(), 1);
              validate_parabolic(QuasiParabolicData{3, {FlagType{{2, 2}}}}, one_point);
          }) == "RankMismatch");
}
