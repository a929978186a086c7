#include "dsfem/report.hpp"

#include <cstdio>
#include <optional>

namespace dsfem {

namespace {

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

std::string err(double v) { return fmt("%.6e", v); }
std::string rate(const std::optional<double>& v) { return v ? fmt("%.4f", *v) : std::string(); }
std::string err_md(double v) { return fmt("%.3e", v); }
std::string rate_md(const std::optional<double>& v) { return v ? fmt("%.2f", *v) : std::string("-"); }

}  // namespace

std::string galerkin_csv(const std::vector<GalerkinRow>& rows) {
  std::string out = "family,element,variant,r,n,dofs,e_l2,rate_l2,e_h1,rate_h1\n";
  for (const auto& r : rows) {
    out += r.family + ',' + r.element + ',' + r.variant + ',' + std::to_string(r.r) + ',' + std::to_string(r.n) +
           ',' + std::to_string(r.dofs) + ',' + err(r.e_l2) + ',' + rate(r.rate_l2) + ',' + err(r.e_h1) + ',' +
           rate(r.rate_h1) + '\n';
  }
  return out;
}

std::string mixed_csv(const std::vector<MixedRow>& rows) {
  std::string out = "family,variant,r,n,dofs,e_p,rate_p,e_u,rate_u,e_div,rate_div\n";
  for (const auto& r : rows) {
    out += r.family + ',' + r.variant + ',' + std::to_string(r.r) + ',' + std::to_string(r.n) + ',' +
           std::to_string(r.dofs) + ',' + err(r.e_p) + ',' + rate(r.rate_p) + ',' + err(r.e_u) + ',' +
           rate(r.rate_u) + ',' + err(r.e_div) + ',' + rate(r.rate_div) + '\n';
  }
  return out;
}

std::string galerkin_markdown(const std::vector<GalerkinRow>& rows) {
  std::string out =
      "| family | element | variant | r | n | dofs | L2 error | rate | H1 error | rate |\n"
      "|---|---|---|---|---|---|---|---|---|---|\n";
  for (const auto& r : rows) {
    out += "| " + r.family + " | " + r.element + " | " + r.variant + " | " + std::to_string(r.r) + " | " +
           std::to_string(r.n) + " | " + std::to_string(r.dofs) + " | " + err_md(r.e_l2) + " | " +
           rate_md(r.rate_l2) + " | " + err_md(r.e_h1) + " | " + rate_md(r.rate_h1) + " |\n";
  }
  return out;
}

std::string mixed_markdown(const std::vector<MixedRow>& rows) {
  std::string out =
      "| family | variant | r | n | dofs | p error | rate | u error | rate | div error | rate |\n"
      "|---|---|---|---|---|---|---|---|---|---|---|\n";
  for (const auto& r : rows) {
    out += "| " + r.family + " | " + r.variant + " | " + std::to_string(r.r) + " | " + std::to_string(r.n) + " | " +
           std::to_string(r.dofs) + " | " + err_md(r.e_p) + " | " + rate_md(r.rate_p) + " | " + err_md(r.e_u) +
           " | " + rate_md(r.rate_u) + " | " + err_md(r.e_div) + " | " + rate_md(r.rate_div) + " |\n";
  }
  return out;
}

}  // namespace dsfem
