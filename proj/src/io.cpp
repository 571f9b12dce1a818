#include "gaplab/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace gaplab {

namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

Json to_json(const SystemSpec& sys) {
  Json j;
  switch (sys.kind) {
    case SystemKind::AffineTorus:
      j["kind"] = "affine_torus";
      j["A"] = sys.A;
      j["b"] = sys.b;
      break;
    case SystemKind::Doubling:
      j["kind"] = "doubling";
      j["m"] = sys.multiplier;
      break;
    case SystemKind::Solenoid:
      j["kind"] = "solenoid";
      j["lambda"] = sys.lambda;
      break;
  }
  return j;
}

SystemSpec system_from_json(const Json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "affine_torus")
    return SystemSpec::affine_torus(
        j.at("A").get<std::vector<std::vector<long long>>>(),
        j.at("b").get<std::vector<double>>());
  if (kind == "doubling") return SystemSpec::doubling(j.value("m", 2));
  if (kind == "solenoid")
    return SystemSpec::solenoid(j.at("lambda").get<double>());
  throw ConfigError("/kind: unknown system kind '" + kind + "'");
}

Json to_json(const TrigPoly& p) {
  Json j;
  j["d"] = p.dim;
  j["real"] = p.real;
  Json terms = Json::array();
  for (const auto& [k, c] : p.terms) {
    Json t;
    t["k"] = k;
    t["re"] = c.real();
    t["im"] = c.imag();
    terms.push_back(std::move(t));
  }
  j["terms"] = std::move(terms);
  return j;
}

TrigPoly trigpoly_from_json(const Json& j) {
  TrigPoly p(j.at("d").get<int>(), j.value("real", false));
  for (const Json& t : j.at("terms"))
    p.add_term(t.at("k").get<std::vector<int>>(),
               {t.at("re").get<double>(), t.value("im", 0.0)});
  p.validate();
  return p;
}

Json to_json(const SamplingFn& f) {
  Json j = to_json(f.base);
  switch (f.post) {
    case PostMap::Identity:
      j["post"] = "identity";
      break;
    case PostMap::ClampBelow:
      j["post"] = "clamp_below";
      j["t"] = f.threshold;
      break;
    case PostMap::Modulus:
      j["post"] = "modulus";
      break;
  }
  return j;
}

SamplingFn samplingfn_from_json(const Json& j) {
  TrigPoly base = trigpoly_from_json(j);
  const std::string post = j.value("post", "identity");
  if (post == "identity") return SamplingFn::identity(std::move(base));
  if (post == "clamp_below")
    return SamplingFn::clamp_below(std::move(base), j.at("t").get<double>());
  if (post == "modulus") return SamplingFn::modulus(std::move(base));
  throw ConfigError("/post: unknown post map '" + post + "'");
}

Json to_json(const Gap& gap) {
  return Json{{"gap", {gap.lo, gap.hi}}, {"label", gap.label},
              {"width", gap.width()}};
}

Json to_json(const GapLabelReport& rep) {
  Json j;
  j["gap"] = to_json(rep.gap);
  j["match"] = Json{{"m", rep.match.coeffs},
                    {"n", rep.match.n},
                    {"value", rep.match.value},
                    {"residual", rep.match.residual},
                    {"matched", rep.match.matched}};
  return j;
}

Json to_json(const DsVerdict& v) {
  Json j;
  switch (v.status) {
    case DsStatus::Dominated:
      j["status"] = "dominated";
      j["rate"] = v.rate;
      break;
    case DsStatus::NotDominated:
      j["status"] = "not_dominated";
      break;
    case DsStatus::Inconclusive:
      j["status"] = "inconclusive";
      break;
  }
  j["horizon"] = v.horizon;
  j["reason"] = v.reason;
  return j;
}

std::string dos_csv(const DosEstimate& dos) {
  std::ostringstream out;
  out << "value,weight\n";
  for (std::size_t i = 0; i < dos.values.size(); ++i)
    out << fmt17(dos.values[i]) << ',' << fmt17(dos.weights[i]) << '\n';
  return out.str();
}

std::string curve_csv(const std::string& xname, const std::string& yname,
                      const std::vector<double>& x,
                      const std::vector<double>& y) {
  std::ostringstream out;
  out << xname << ',' << yname << '\n';
  for (std::size_t i = 0; i < x.size(); ++i)
    out << fmt17(x[i]) << ',' << fmt17(y[i]) << '\n';
  return out.str();
}

std::string block_csv(const JacobiBlock& blk) {
  std::ostringstream out;
  out << "n,b,re_a,im_a\n";
  for (std::size_t n = 0; n < blk.size(); ++n) {
    out << n << ',' << fmt17(blk.diag[n]);
    if (n + 1 < blk.size())
      out << ',' << fmt17(blk.offdiag[n].real()) << ','
          << fmt17(blk.offdiag[n].imag());
    else
      out << ",,";
    out << '\n';
  }
  return out.str();
}

std::string svg_line_plot(const std::string& title,
                          const std::vector<double>& x,
                          const std::vector<double>& y) {
  const int W = 800, H = 500, pad = 50;
  double xlo = 0, xhi = 1, ylo = 0, yhi = 1;
  if (!x.empty()) {
    xlo = *std::min_element(x.begin(), x.end());
    xhi = *std::max_element(x.begin(), x.end());
    ylo = *std::min_element(y.begin(), y.end());
    yhi = *std::max_element(y.begin(), y.end());
  }
  if (xhi == xlo) xhi = xlo + 1;
  if (yhi == ylo) yhi = ylo + 1;
  auto px = [&](double v) { return pad + (v - xlo) / (xhi - xlo) * (W - 2 * pad); };
  auto py = [&](double v) { return H - pad - (v - ylo) / (yhi - ylo) * (H - 2 * pad); };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W
      << "\" height=\"" << H << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" "
      << "font-family=\"monospace\" font-size=\"14\">" << title << "</text>\n";
  out << "<rect x=\"" << pad << "\" y=\"" << pad << "\" width=\"" << W - 2 * pad
      << "\" height=\"" << H - 2 * pad
      << "\" fill=\"none\" stroke=\"black\"/>\n";
  out << "<text x=\"" << pad << "\" y=\"" << H - pad + 20
      << "\" font-family=\"monospace\" font-size=\"11\">" << fmt17(xlo)
      << "</text>\n";
  out << "<text x=\"" << W - pad << "\" y=\"" << H - pad + 20
      << "\" text-anchor=\"end\" font-family=\"monospace\" font-size=\"11\">"
      << fmt17(xhi) << "</text>\n";
  out << "<polyline fill=\"none\" stroke=\"#2255aa\" stroke-width=\"1.2\" points=\"";
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (i) out << ' ';
    out << px(x[i]) << ',' << py(y[i]);
  }
  out << "\"/>\n</svg>\n";
  return out.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path + " for writing");
  out << content;
}

}  // namespace gaplab
