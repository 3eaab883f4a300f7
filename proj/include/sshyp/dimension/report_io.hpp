#ifndef SSHYP_DIMENSION_REPORT_IO_HPP
#define SSHYP_DIMENSION_REPORT_IO_HPP

#include <json.hpp>
#include <ostream>
#include <string>
#include <vector>

#include "sshyp/dimension/reports.hpp"
#include "sshyp/dimension/toral_dimension.hpp"
#include "sshyp/measure/intrinsic.hpp"

namespace sshyp {

using Json = nlohmann::ordered_json;

Json to_json(const CoverReport& r);
Json to_json(const CapacityFit& f);
Json to_json(const EntropyReport& r);
Json to_json(const FundamentalReport& r);
Json to_json(const std::vector<CovIdentityRow>& rows);
Json to_json(const LocalEntropyReport& r);
Json to_json(const MeasureTree& t);
Json to_json(const MeasureEstimate& e);
Json to_json(const BoxMeasure& m);
Json to_json(const ScalingReport& r);
Json to_json(const HomogeneityReport& r);
Json to_json(const ParryComparison& c);
Json to_json(const std::vector<ConditionalRow>& rows);
Json to_json(const ToralBoxMeasure& m);

// Fixed, versioned CSV block: "# sshyp <name> v1", a header line, then rows.
struct CsvTable {
  std::string name;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

// Shortest decimal that round-trips.
std::string csv_number(double v);
void write_csv(std::ostream& os, const CsvTable& t);

CsvTable cover_csv(const CoverReport& r);
CsvTable entropy_csv(const EntropyReport& r);
CsvTable cov_identity_csv(const std::vector<CovIdentityRow>& rows);
CsvTable measure_depth_csv(const MeasureTree& t);
CsvTable homogeneity_csv(const HomogeneityReport& r);
CsvTable parry_csv(const ParryComparison& c);

std::string word_string(const Word& w);

}  // namespace sshyp

#endif  // SSHYP_DIMENSION_REPORT_IO_HPP
