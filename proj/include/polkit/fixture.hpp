#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "polkit/ffield.hpp"
#include "polkit/polarization.hpp"

namespace polkit {

using Json = nlohmann::ordered_json;

struct FixturePeriods {
    ComplexMatrix omega;
    bool symplectic = false;  // columns already in symplectic order
};

struct FfieldCheck {
    std::int64_t p = 0;
    Integer d;
    Rational a0, a1, b0, b1;  // y^2 = x^3 + (a0 + a1 sqrt d) x + (b0 + b1 sqrt d)
    std::string plus, minus;  // candidate curve names
};

struct WeilData {
    QuadraticSurd lambda;
    Integer n;
    Complex w1, w2;
    QuadraticSurd sigma1, sigma2;  // Lambda^sigma = <sigma1 w1, sigma2 w2>
};

struct Fixture {
    int schema = 1;
    std::string name;
    std::string description;
    std::optional<QuadOrder> order;
    std::optional<IntMatrix> action;  // rho(omega)
    std::string base_form;            // form used for the polarized data
    std::map<std::string, RatMatrix> forms;
    std::map<std::string, OrderElement> elements;
    std::map<std::string, IntMatrix> endos;
    std::map<std::string, IntMatrix> basis_changes;
    std::map<std::string, RatMatrix> lattices;  // columns in homology coordinates
    std::map<std::string, FixturePeriods> periods;
    std::map<std::string, RatVector> torsion;
    std::map<std::string, std::array<Rational, 7>> curves;
    std::vector<FfieldCheck> ffield;
    std::optional<WeilData> weil;
    Json expected = Json::array();

    const RatMatrix& form(const std::string& key) const;
    const OrderElement& element(const std::string& key) const;
    SexticCurve curve(const std::string& key) const;
    PolarizedLatticeData polarized(const std::string& form_key = {}) const;
};

// Parse a document; throws SchemaError("/json/pointer: message").
Fixture parse_fixture(const Json& doc);
Fixture load_fixture(const std::string& path);

// Type invariants of the loaded data; empty means valid.
std::vector<std::string> validate_fixture(const Fixture& f);

// Text helpers shared with the CLI.
RatMatrix parse_rat_matrix(const Json& j, const std::string& pointer);
ComplexMatrix parse_complex_matrix(const Json& j, const std::string& pointer);
Complex parse_complex(const Json& j, const std::string& pointer);
Json to_json(const RatMatrix& m);
Json to_json(const IntMatrix& m);
Json to_json(const Complex& z, int digits);

// "4*Dinf", "D5+D7", "-2*D5+Dinf" over the named torsion vectors.
RatVector torsion_combination(const Fixture& f, const std::string& expr);

enum class CheckStatus { Pass, Fail, Skip };
const char* status_name(CheckStatus s);

struct CheckResult {
    std::string id;  // e.g. "type[E]"
    CheckStatus status = CheckStatus::Skip;
    std::string computed;
    std::string expected;
    std::string tolerance;  // empty for exact checks
    std::string note;

    bool operator==(const CheckResult&) const = default;
};

struct RunReport {
    std::string fixture;
    int digits = 30;
    unsigned precision_bits = 128;
    std::vector<CheckResult> checks;
    double wall_seconds = 0;

    int count(CheckStatus s) const;
    bool ok() const { return count(CheckStatus::Fail) == 0; }
    std::string text() const;  // deterministic; no timing
    Json to_json() const;
    static RunReport from_json(const Json& j);

    bool operator==(const RunReport&) const = default;
};

struct VerifyConfig {
    int digits = 30;
    unsigned jobs = 1;
};

RunReport verify_fixture(const Fixture& f, const VerifyConfig& cfg);

}  // namespace polkit
