#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "liftcalc/lifting.hpp"
#include "liftcalc/verify.hpp"

using json = nlohmann::ordered_json;
using namespace liftcalc;

namespace {

constexpr const char* kSchema = "liftcalc/1";

enum ExitCode {
    kOk = 0,
    kParseError = 1,
    kInsufficientPrecision = 2,
    kBudgetError = 3,
    kVerifyFailed = 4,
};

struct CommonOpts {
    std::uint32_t q = 3;
    std::string ext = "unramified";
    int level = 0;
    int precision = 12;
    std::string format = "json";
    std::string out;
};

ExtCase parse_ext(const std::string& s) {
    if (s == "unramified") return ExtCase::Unramified;
    if (s == "ramified") return ExtCase::Ramified;
    throw ParseError("--ext must be unramified or ramified");
}

void emit(const CommonOpts& c, const std::string& text) {
    if (c.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(c.out, std::ios::binary);
    if (!f) throw Error("cannot open output file " + c.out);
    f << text;
}

/* RFC 4180 quoting */
std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += "\"\"";
        else out += ch;
    }
    out += "\"";
    return out;
}

std::string value_str(const ValueExt& v) { return v.str(); }

int run_compute(const CommonOpts& c, const std::string& gamma_lit) {
    FieldParams fp(c.q, c.precision);
    OrderSpec ord(fp, parse_ext(c.ext), c.level);
    Quat gamma = parse_quat(fp, gamma_lit);

    bool insufficient = false;
    auto guard = [&insufficient](auto&& fn) -> std::string {
        try {
            ValueExt v = fn();
            if (v.is_insufficient()) insufficient = true;
            return v.str();
        } catch (const Unsupported&) {
            return "Unsupported";
        } catch (const InsufficientPrecisionError&) {
            insufficient = true;
            return "InsufficientPrecision";
        }
    };

    json doc;
    doc["schema"] = kSchema;
    doc["command"] = "compute";
    doc["q"] = c.q;
    doc["ext"] = c.ext;
    doc["level"] = c.level;
    doc["precision"] = c.precision;
    doc["gamma"] = format_quat(gamma);
    doc["mu"] = format_quat(ord.mu());
    doc["index"] = ord.index();

    std::string classification = "Unsupported", distance = "Unsupported",
                phi_dprime = "Unsupported";
    try {
        Depth d = classify(gamma, ord);
        classification = depth_str(d.cls);
        distance = rat_str(d.distance);
        phi_dprime = d.distance == 0 ? "Infinite" : value_str(phi(d.gamma_dprime));
    } catch (const Unsupported&) {
    } catch (const InsufficientPrecisionError&) {
        insufficient = true;
        classification = distance = phi_dprime = "InsufficientPrecision";
    }
    doc["classification"] = classification;
    doc["distance"] = distance;
    doc["phi_gamma_dprime"] = phi_dprime;

    doc["v_x"] = guard([&] { return v_x(gamma, ord); });
    doc["v_y"] = guard([&] { return v_y(gamma, ord); });
    doc["v_z"] = guard([&] { return v_z(gamma, ord); });
    if (ord.ext() == ExtCase::Ramified)
        doc["v_abar"] = guard([&] { return v_abar(gamma, ord); });

    if (c.format == "csv") {
        std::string header, row;
        for (auto& [key, val] : doc.items()) {
            if (!header.empty()) {
                header += ",";
                row += ",";
            }
            header += csv_field(key);
            row += csv_field(val.is_string() ? val.get<std::string>() : val.dump());
        }
        emit(c, header + "\n" + row + "\n");
    } else {
        emit(c, doc.dump(2) + "\n");
    }
    return insufficient ? kInsufficientPrecision : kOk;
}

int run_verify(const CommonOpts& c, const std::string& identity, bool ext_given,
               bool level_given, int samples, std::uint64_t seed, int gl2_level) {
    VerifyOptions opt;
    opt.q = c.q;
    opt.precision = c.precision;
    if (ext_given) opt.ext = parse_ext(c.ext);
    if (level_given) opt.level = c.level;
    opt.samples = samples;
    opt.seed = seed;
    opt.gl2_level = gl2_level;

    std::vector<VerifyRow> rows =
        identity.empty() ? run_all_identities(opt) : run_identity(identity, opt);

    int failures = 0;
    for (auto& r : rows) failures += r.failures;

    if (c.format == "csv") {
        std::string text = "identity,config,samples,failures,max_discrepancy\n";
        for (auto& r : rows)
            text += csv_field(r.identity) + "," + csv_field(r.config) + "," +
                    std::to_string(r.samples) + "," + std::to_string(r.failures) + "," +
                    csv_field(r.max_discrepancy) + "\n";
        emit(c, text);
    } else {
        json doc;
        doc["schema"] = kSchema;
        doc["command"] = "verify";
        doc["q"] = c.q;
        doc["seed"] = seed;
        doc["samples"] = samples;
        json arr = json::array();
        for (auto& r : rows) {
            json row;
            row["identity"] = r.identity;
            row["config"] = r.config;
            row["samples"] = r.samples;
            row["failures"] = r.failures;
            row["max_discrepancy"] = r.max_discrepancy;
            arr.push_back(row);
        }
        doc["rows"] = arr;
        emit(c, doc.dump(2) + "\n");
    }
    return failures > 0 ? kVerifyFailed : kOk;
}

int run_table(const CommonOpts& c, const std::string& levels,
              const std::vector<std::string>& gammas) {
    FieldParams fp(c.q, c.precision);
    std::size_t dots = levels.find("..");
    if (dots == std::string::npos) throw ParseError("--levels must be 'lo..hi'");
    int lo = std::stoi(levels.substr(0, dots));
    int hi = std::stoi(levels.substr(dots + 2));
    if (lo < 0 || hi < lo) throw ParseError("bad level range");

    bool insufficient = false;
    std::vector<std::vector<std::string>> cells;
    for (const auto& lit : gammas) {
        Quat gamma = parse_quat(fp, lit);
        std::vector<std::string> row;
        for (int s = lo; s <= hi; ++s) {
            OrderSpec ord(fp, parse_ext(c.ext), s);
            try {
                ValueExt v = v_x(gamma, ord);
                if (v.is_insufficient()) insufficient = true;
                row.push_back(v.str());
            } catch (const Unsupported&) {
                row.push_back("Unsupported");
            } catch (const InsufficientPrecisionError&) {
                insufficient = true;
                row.push_back("InsufficientPrecision");
            }
        }
        cells.push_back(std::move(row));
    }

    if (c.format == "csv") {
        std::string text = "gamma";
        for (int s = lo; s <= hi; ++s) text += ",s=" + std::to_string(s);
        text += "\n";
        for (std::size_t i = 0; i < gammas.size(); ++i) {
            text += csv_field(gammas[i]);
            for (auto& cell : cells[i]) text += "," + csv_field(cell);
            text += "\n";
        }
        emit(c, text);
    } else {
        json doc;
        doc["schema"] = kSchema;
        doc["command"] = "table";
        doc["q"] = c.q;
        doc["ext"] = c.ext;
        json lv = json::array();
        for (int s = lo; s <= hi; ++s) lv.push_back(s);
        doc["levels"] = lv;
        json rows = json::array();
        for (std::size_t i = 0; i < gammas.size(); ++i) {
            json row;
            row["gamma"] = gammas[i];
            row["v_x"] = cells[i];
            rows.push_back(row);
        }
        doc["rows"] = rows;
        emit(c, doc.dump(2) + "\n");
    }
    return insufficient ? kInsufficientPrecision : kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"liftcalc: exact lifting depths of quaternionic automorphisms "
                 "over quasi-canonical liftings"};
    app.require_subcommand(1);

    CommonOpts c;
    std::string gamma_lit, identity, levels = "0..0";
    std::vector<std::string> gammas;
    int samples = 100, gl2_level = 2;
    std::uint64_t seed = 1;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--q", c.q, "odd prime residue cardinality");
        sub->add_option("--precision", c.precision, "pi-digits carried (default 12)");
        sub->add_option("--format", c.format, "json|csv")
            ->check(CLI::IsMember({"json", "csv"}));
        sub->add_option("--out", c.out, "write the report to a file");
    };

    CLI::App* compute = app.add_subcommand("compute", "lifting depths of one gamma");
    add_common(compute);
    compute->add_option("--ext", c.ext, "unramified|ramified")
        ->check(CLI::IsMember({"unramified", "ramified"}));
    compute->add_option("--level", c.level, "order level s");
    compute->add_option("--gamma", gamma_lit, "quaternion literal a=...;b=...")
        ->required();

    CLI::App* verify = app.add_subcommand("verify", "run identity suites");
    add_common(verify);
    CLI::Option* vext = verify->add_option("--ext", c.ext, "restrict to one case")
                            ->check(CLI::IsMember({"unramified", "ramified"}));
    CLI::Option* vlvl = verify->add_option("--level", c.level, "restrict to one level");
    verify->add_option("--identity", identity, "identity name (default: all)");
    verify->add_option("--samples", samples, "samples per configuration");
    verify->add_option("--seed", seed, "RNG seed");
    verify->add_option("--gl2-level", gl2_level, "GL2 enumeration level");

    CLI::App* table = app.add_subcommand("table", "v_x across a gamma/level family");
    add_common(table);
    table->add_option("--ext", c.ext, "unramified|ramified")
        ->check(CLI::IsMember({"unramified", "ramified"}));
    table->add_option("--levels", levels, "level range lo..hi");
    table->add_option("--gamma", gammas, "quaternion literal (repeatable)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kParseError;
    }

    try {
        if (compute->parsed()) return run_compute(c, gamma_lit);
        if (verify->parsed())
            return run_verify(c, identity, vext->count() > 0, vlvl->count() > 0,
                              samples, seed, gl2_level);
        if (table->parsed()) return run_table(c, levels, gammas);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kParseError;
    } catch (const BudgetExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kBudgetError;
    } catch (const InsufficientPrecisionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInsufficientPrecision;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kParseError;
    }
    return kOk;
}
