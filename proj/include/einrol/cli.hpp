#ifndef EINROL_CLI_HPP
#define EINROL_CLI_HPP

#include <algorithm>
#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "einrol/error.hpp"
#include "einrol/io.hpp"
#include "einrol/mp_inverse.hpp"
#include "einrol/rol.hpp"
#include "einrol/tensor_ops.hpp"

namespace einrol::cli
{

// Process exit codes.
enum Exit : int
{
    ok = 0,
    failure = 1,
    usage = 2,
    rol_fails = 3,
    non_convergence = 4,
};

// "2,2:2,2" -> ([2,2],[2,2]); either side may be empty.
inline ModeShape parse_shape_spec(const std::string& spec)
{
    const auto colon = spec.find(':');
    if (colon == std::string::npos || spec.find(':', colon + 1) !=
                                          std::string::npos)
    {
        throw Error(Errc::invalid_argument,
                    "shape must look like ROWS:COLS, e.g. 2,2:2,2");
    }
    auto dims = [](const std::string& s) {
        Dims d;
        std::stringstream ss(s);
        std::string item;
        while (std::getline(ss, item, ','))
        {
            if (item.empty() ||
                item.find_first_not_of("0123456789") != std::string::npos)
            {
                throw Error(Errc::invalid_argument,
                            "bad dimension '" + item + "' in shape");
            }
            d.push_back(std::stoull(item));
        }
        return d;
    };
    return ModeShape(dims(spec.substr(0, colon)), dims(spec.substr(colon + 1)));
}

inline nlohmann::json condition_json(const Condition& c)
{
    return {{"residual", c.residual}, {"holds", c.holds}};
}

inline nlohmann::json report_json(const RolReport& r, const NumericPolicy& p)
{
    nlohmann::json j;
    r.for_each([&](std::string_view name, const Condition& c) {
        j[std::string(name)] = condition_json(c);
    });
    j["groups_agree"] = r.groups_agree();
    j["consistent"] = r.consistent();
    j["eq_tol"] = p.eq_tol;
    j["rank_tol"] = p.rank_tol;
    return j;
}

//
// Runs one command line (without the program name). Output goes to `out`,
// diagnostics to `err`; the return value is the process exit code.
//
inline int run_command(std::vector<std::string> args, std::ostream& out,
                       std::ostream& err)
{
    NumericPolicy policy;

    CLI::App app{"Einstein-product tensor pseudoinverse and reverse-order-law "
                 "toolkit",
                 "einrol"};
    app.require_subcommand(1);

    std::string in_path, a_path, b_path, out_path, report_path;
    std::string u_path, d_path, v_path, shape_spec, family_name;
    std::size_t trials = 0;
    std::uint64_t seed = 0;

    auto add_rank_tol = [&](CLI::App* c) {
        c->add_option("--rank-tol", policy.rank_tol,
                      "relative singular-value cutoff")
            ->capture_default_str();
    };
    auto add_tol = [&](CLI::App* c) {
        c->add_option("--tol", policy.eq_tol,
                      "relative equality tolerance")
            ->capture_default_str();
    };

    auto* product = app.add_subcommand("product", "Einstein product A * B");
    product->add_option("--a", a_path, "left tensor")->required();
    product->add_option("--b", b_path, "right tensor")->required();
    product->add_option("--out", out_path, "output tensor")->required();

    auto* pinv_cmd = app.add_subcommand("pinv", "Moore-Penrose inverse");
    pinv_cmd->add_option("--in", in_path, "input tensor")->required();
    pinv_cmd->add_option("--out", out_path, "output tensor")->required();
    add_rank_tol(pinv_cmd);

    auto* svd = app.add_subcommand("svd", "tensor SVD A = U * D * V^*");
    svd->add_option("--in", in_path, "input tensor")->required();
    svd->add_option("--out-u", u_path, "U factor")->required();
    svd->add_option("--out-d", d_path, "D factor")->required();
    svd->add_option("--out-v", v_path, "V factor")->required();

    auto* trace_cmd = app.add_subcommand("trace", "print trace as 're im'");
    trace_cmd->add_option("--in", in_path, "input tensor")->required();

    auto* solve = app.add_subcommand(
        "solve", "minimum-norm least-squares solution of A * X = B");
    solve->add_option("--a", a_path, "coefficient tensor")->required();
    solve->add_option("--b", b_path, "right-hand side")->required();
    solve->add_option("--out", out_path, "solution tensor")->required();
    add_rank_tol(solve);

    auto* rol = app.add_subcommand(
        "rol", "reverse-order-law report; exit 0 if (AB)+ = B+A+, 3 if not");
    rol->add_option("--a", a_path, "left tensor")->required();
    rol->add_option("--b", b_path, "right tensor")->required();
    rol->add_option("--report", report_path, "write JSON report here");
    add_tol(rol);
    add_rank_tol(rol);

    auto* fuzz = app.add_subcommand(
        "fuzz", "seeded search for reverse-order-law equivalence violations");
    fuzz->add_option("--shape", shape_spec, "A's shape as ROWS:COLS")
        ->required();
    fuzz->add_option("--trials", trials, "number of random pairs")
        ->required();
    fuzz->add_option("--seed", seed, "random seed")->required();
    fuzz->add_option("--family", family_name,
                     "restrict to one family (dense, rank_deficient, "
                     "unitary_factor, diagonal, orthogonal_sum)");
    add_tol(fuzz);
    add_rank_tol(fuzz);

    auto* identities = app.add_subcommand(
        "identities", "residuals of the standard pseudoinverse identities");
    identities->add_option("--in", in_path, "input tensor")->required();
    add_rank_tol(identities);

    std::reverse(args.begin(), args.end());
    try
    {
        app.parse(args);
    }
    catch (const CLI::CallForHelp&)
    {
        out << app.help();
        return ok;
    }
    catch (const CLI::CallForAllHelp&)
    {
        out << app.help("", CLI::AppFormatMode::All);
        return ok;
    }
    catch (const CLI::ParseError& e)
    {
        err << "error: " << e.what() << "\n";
        return usage;
    }

    try
    {
        policy.validate();
        if (product->parsed())
        {
            write_tensor_file(out_path, parse_tensor_file(a_path) *
                                            parse_tensor_file(b_path));
        }
        else if (pinv_cmd->parsed())
        {
            write_tensor_file(out_path, pinv(parse_tensor_file(in_path), policy));
        }
        else if (svd->parsed())
        {
            const SvdFactors f = tsvd(parse_tensor_file(in_path));
            write_tensor_file(u_path, f.u);
            write_tensor_file(d_path, f.d);
            write_tensor_file(v_path, f.v);
        }
        else if (trace_cmd->parsed())
        {
            const Complex t = trace(parse_tensor_file(in_path));
            out << detail::format_double(t.real()) << " "
                << detail::format_double(t.imag()) << "\n";
        }
        else if (solve->parsed())
        {
            write_tensor_file(out_path,
                              min_norm_solve(parse_tensor_file(a_path),
                                             parse_tensor_file(b_path),
                                             policy));
        }
        else if (rol->parsed())
        {
            const RolReport r = rol_report(parse_tensor_file(a_path),
                                           parse_tensor_file(b_path), policy);
            const nlohmann::json j = report_json(r, policy);
            if (!report_path.empty())
            {
                std::ofstream f(report_path);
                if (!f)
                    throw Error(Errc::io_failure,
                                "cannot write " + report_path);
                f << j.dump(2) << "\n";
            }
            r.for_each([&](std::string_view name, const Condition& c) {
                out << name << " " << detail::format_double(c.residual) << " "
                    << (c.holds ? "true" : "false") << "\n";
            });
            return r.direct.holds ? ok : rol_fails;
        }
        else if (fuzz->parsed())
        {
            std::optional<PairFamily> only;
            if (!family_name.empty())
            {
                for (PairFamily f : all_pair_families)
                    if (to_string(f) == family_name)
                        only = f;
                if (!only)
                {
                    err << "error: unknown family '" << family_name << "'\n";
                    return usage;
                }
            }
            const FuzzSummary s = fuzz_search(parse_shape_spec(shape_spec),
                                              trials, seed, policy, only);
            out << "trials " << s.trials << "\n"
                << "direct_true " << s.direct_true << "\n"
                << "direct_false " << s.direct_false << "\n"
                << "violations " << s.violations << "\n"
                << "min_margin_decades "
                << detail::format_double(s.min_margin_decades) << "\n";
            if (s.first_violation)
            {
                out << "first_violation_trial " << s.first_violation->trial
                    << " family " << to_string(s.first_violation->family)
                    << "\n";
            }
            return s.violations == 0 ? ok : rol_fails;
        }
        else if (identities->parsed())
        {
            const IdentitySuite s =
                identity_suite(parse_tensor_file(in_path), policy);
            for (const auto& [name, r] : s.residuals)
                out << name << "\t" << detail::format_double(r) << "\n";
            out << "normal\t" << (s.normal ? "true" : "false") << "\n"
                << "ep\t" << (s.ep ? "true" : "false") << "\n";
        }
    }
    catch (const Error& e)
    {
        err << "error: " << e.what() << "\n";
        return e.code() == Errc::non_convergence ? non_convergence : failure;
    }
    catch (const std::exception& e)
    {
        err << "error: " << e.what() << "\n";
        return failure;
    }
    return ok;
}

} // namespace einrol::cli

#endif // EINROL_CLI_HPP
