#pragma once

#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "gaplab/cocycle.hpp"
#include "gaplab/ids.hpp"
#include "gaplab/labelling.hpp"

namespace gaplab {

using Json = nlohmann::json;

Json to_json(const SystemSpec& sys);
SystemSpec system_from_json(const Json& j);

Json to_json(const TrigPoly& p);
TrigPoly trigpoly_from_json(const Json& j);

Json to_json(const SamplingFn& f);
SamplingFn samplingfn_from_json(const Json& j);

Json to_json(const Gap& gap);
Json to_json(const GapLabelReport& rep);
Json to_json(const DsVerdict& v);

// CSV writers; fixed 17-significant-digit formatting so identical runs
// produce byte-identical artifacts.
std::string dos_csv(const DosEstimate& dos);
std::string curve_csv(const std::string& xname, const std::string& yname,
                      const std::vector<double>& x,
                      const std::vector<double>& y);
std::string block_csv(const JacobiBlock& blk);

// Self-contained SVG line plot.
std::string svg_line_plot(const std::string& title,
                          const std::vector<double>& x,
                          const std::vector<double>& y);

void write_file(const std::string& path, const std::string& content);

}  // namespace gaplab
