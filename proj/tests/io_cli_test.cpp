#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "einrol/cli.hpp"
#include "test_support.hpp"

using namespace einrol;
using namespace einrol::test;

namespace
{

namespace fs = std::filesystem;

const fs::path data_dir = EINROL_TEST_DATA_DIR;

struct CliResult
{
    int code;
    std::string out;
    std::string err;
};

CliResult run(std::vector<std::string> args)
{
    std::ostringstream out, err;
    const int code = cli::run_command(std::move(args), out, err);
    return {code, out.str(), err.str()};
}

class TempDir : public ::testing::Test
{
protected:
    void SetUp() override
    {
        dir = fs::temp_directory_path() /
              ("einrol_" + std::string(::testing::UnitTest::GetInstance()
                                           ->current_test_info()
                                           ->name()));
        fs::create_directories(dir);
    }
    void TearDown() override { fs::remove_all(dir); }

    std::string path(const std::string& name) const
    {
        return (dir / name).string();
    }

    fs::path dir;
};

Errc parse_error_code(const std::string& text)
{
    try
    {
        parse_tensor_text(text);
    }
    catch (const Error& e)
    {
        return e.code();
    }
    ADD_FAILURE() << "no error for " << text;
    return Errc::invalid_argument;
}

TEST(ParseTensor, Example)
{
    const DenseTensor t = parse_tensor_text(
        R"({"row_dims":[2],"col_dims":[1],"entries":[[1,0],[0,-2.5]]})");
    EXPECT_EQ(t.shape(), ModeShape({2}, {1}));
    EXPECT_EQ(t(1, 0), Complex(0.0, -2.5));
}

TEST(ParseTensor, Errors)
{
    EXPECT_EQ(parse_error_code(
                  R"({"row_dims":[2],"col_dims":[2],"entries":[[1,0]]})"),
              Errc::length_mismatch);
    EXPECT_EQ(parse_error_code("{not json"), Errc::malformed_document);
    EXPECT_EQ(parse_error_code("[1,2]"), Errc::malformed_document);
    EXPECT_EQ(parse_error_code(R"({"row_dims":[2],"entries":[]})"),
              Errc::malformed_document);
    EXPECT_EQ(parse_error_code(
                  R"({"row_dims":[1],"col_dims":[1],"entries":[[1]]})"),
              Errc::malformed_document);
    EXPECT_EQ(parse_error_code(
                  R"({"row_dims":[0],"col_dims":[1],"entries":[]})"),
              Errc::malformed_document);
    EXPECT_EQ(parse_error_code(
                  R"({"row_dims":[1],"col_dims":[1],"entries":[[1e400,0]],"x":1})"),
              Errc::non_finite_value);
    EXPECT_EQ(parse_error_code(R"({"row_dims":[1],"big":1e999})"),
              Errc::non_finite_value);
}

TEST(ParseTensor, OverflowIsNonFiniteWithIndex)
{
    try
    {
        parse_tensor_text(
            R"({"row_dims":[1],"col_dims":[2],"entries":[[1,0],[1e400,0]]})");
        FAIL();
    }
    catch (const Error& e)
    {
        EXPECT_EQ(e.code(), Errc::non_finite_value);
        EXPECT_EQ(e.index(), 1u);
    }
}

TEST(FormatTensor, RoundTripIsBitExact)
{
    Rng rng(401);
    for (const ModeShape& s : property_shapes())
    {
        const DenseTensor t = random_tensor(s, rng);
        EXPECT_EQ(parse_tensor_text(format_tensor(t)), t);
    }
    const DenseTensor odd(ModeShape({1}, {3}),
                          {Complex(0.1, -0.0), Complex(1e-310, 5e300),
                           Complex(1.0 / 3.0, 2.0 / 3.0)});
    EXPECT_EQ(parse_tensor_text(format_tensor(odd)), odd);
}

TEST(FixtureFiles, MatchSliceBuilders)
{
    EXPECT_EQ(parse_tensor_file(data_dir / "golden_a.json"), golden_a());
    EXPECT_EQ(parse_tensor_file(data_dir / "identity_2x2.json"),
              identity({2, 2}));
    try
    {
        parse_tensor_file(data_dir / "missing.json");
        FAIL();
    }
    catch (const Error& e)
    {
        EXPECT_EQ(e.code(), Errc::io_failure);
    }
}

TEST(ShapeSpec, Parsing)
{
    EXPECT_EQ(cli::parse_shape_spec("2,2:2,2"), ModeShape({2, 2}, {2, 2}));
    EXPECT_EQ(cli::parse_shape_spec("3:2,2"), ModeShape({3}, {2, 2}));
    EXPECT_THROW(cli::parse_shape_spec("2,2"), Error);
    EXPECT_THROW(cli::parse_shape_spec("2,x:2"), Error);
    EXPECT_THROW(cli::parse_shape_spec("2::2"), Error);
}

using Cli = TempDir;

TEST_F(Cli, PinvThenProductGivesIdentity)
{
    const std::string a = (data_dir / "golden_a.json").string();
    ASSERT_EQ(run({"pinv", "--in", a, "--out", path("x.json")}).code, 0);
    ASSERT_EQ(run({"product", "--a", a, "--b", path("x.json"), "--out",
                   path("ax.json")})
                  .code,
              0);
    EXPECT_LE(max_abs_diff(parse_tensor_file(path("ax.json")),
                           identity({2, 2})),
              1e-10);
    EXPECT_LE(max_abs_diff(parse_tensor_file(path("x.json")),
                           golden_inverse_expected()),
              1e-12);
}

TEST_F(Cli, Trace)
{
    const CliResult r =
        run({"trace", "--in", (data_dir / "identity_2x2.json").string()});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "4 0\n");
}

TEST_F(Cli, RolIdentityPair)
{
    const std::string i = (data_dir / "identity_2x2.json").string();
    const CliResult r = run({"rol", "--a", i, "--b", i, "--report",
                             path("report.json")});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("direct 0 true"), std::string::npos);

    std::ifstream f(path("report.json"));
    const nlohmann::json j = nlohmann::json::parse(f);
    for (const char* key :
         {"direct", "left_range", "right_range", "left_hermitian",
          "right_hermitian", "combined", "left_product_projector",
          "right_product_projector", "projector_commute"})
    {
        ASSERT_TRUE(j.contains(key)) << key;
        EXPECT_TRUE(j[key]["holds"].get<bool>());
    }
    EXPECT_TRUE(j["consistent"].get<bool>());
    EXPECT_EQ(j["eq_tol"].get<double>(), 1e-10);
}

TEST_F(Cli, RolFailureExitCode)
{
    const auto [a, b] = converse_failure_pair();
    write_tensor_file(path("a.json"), a);
    write_tensor_file(path("b.json"), b);
    const CliResult r =
        run({"rol", "--a", path("a.json"), "--b", path("b.json")});
    EXPECT_EQ(r.code, 3);
    EXPECT_NE(r.out.find("projector_commute"), std::string::npos);
    EXPECT_NE(r.out.find("direct 0.158"), std::string::npos);
}

TEST_F(Cli, UsageErrors)
{
    EXPECT_EQ(run({"frobnicate"}).code, 2);
    EXPECT_EQ(run({}).code, 2);
    EXPECT_EQ(run({"pinv", "--in", "x.json"}).code, 2);
    EXPECT_EQ(run({"fuzz", "--shape", "2:2", "--trials", "5", "--seed", "1",
                   "--family", "nope"})
                  .code,
              2);
    EXPECT_EQ(run({"--help"}).code, 0);
}

TEST_F(Cli, MissingFileFails)
{
    const CliResult r = run({"trace", "--in", path("absent.json")});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.err.find("cannot open"), std::string::npos);
}

TEST_F(Cli, ShapeMismatchFails)
{
    write_tensor_file(path("a.json"), identity({2}));
    write_tensor_file(path("b.json"), identity({3}));
    EXPECT_EQ(run({"product", "--a", path("a.json"), "--b", path("b.json"),
                   "--out", path("c.json")})
                  .code,
              1);
}

TEST_F(Cli, Fuzz)
{
    const CliResult r = run({"fuzz", "--shape", "2,2:2,2", "--trials", "50",
                             "--seed", "42", "--tol", "1e-8"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("trials 50\n"), std::string::npos);
    EXPECT_NE(r.out.find("violations 0\n"), std::string::npos);
    EXPECT_EQ(run({"fuzz", "--shape", "2,2:2,2", "--trials", "0", "--seed",
                   "1"})
                  .code,
              1);
}

TEST_F(Cli, Identities)
{
    const CliResult r =
        run({"identities", "--in", (data_dir / "golden_a.json").string()});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("normal\tfalse"), std::string::npos);
    EXPECT_NE(r.out.find("ep\ttrue"), std::string::npos);
}

TEST_F(Cli, SvdFactorsReconstruct)
{
    const std::string a = (data_dir / "golden_a.json").string();
    ASSERT_EQ(run({"svd", "--in", a, "--out-u", path("u.json"), "--out-d",
                   path("d.json"), "--out-v", path("v.json")})
                  .code,
              0);
    const DenseTensor u = parse_tensor_file(path("u.json"));
    const DenseTensor d = parse_tensor_file(path("d.json"));
    const DenseTensor v = parse_tensor_file(path("v.json"));
    EXPECT_LE(max_abs_diff(u * d * conj_transpose(v), golden_a()), 1e-12);
}

TEST_F(Cli, Solve)
{
    Rng rng(403);
    const DenseTensor a = random_tensor(ModeShape({2, 2}, {2}), rng);
    const DenseTensor b = random_tensor(ModeShape({2, 2}, {1}), rng);
    write_tensor_file(path("a.json"), a);
    write_tensor_file(path("b.json"), b);
    ASSERT_EQ(run({"solve", "--a", path("a.json"), "--b", path("b.json"),
                   "--out", path("x.json")})
                  .code,
              0);
    EXPECT_LE(max_abs_diff(parse_tensor_file(path("x.json")), pinv(a) * b),
              1e-15);
}

} // namespace
