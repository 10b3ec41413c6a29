#ifndef ROMSCAT_CSV_HPP
#define ROMSCAT_CSV_HPP

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

namespace romscat {

/// Doubles formatted as scientific notation with 17 significant digits,
/// which round-trips IEEE doubles exactly.
std::string csv_format(double v);

class CsvWriter {
public:
    CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header);

    void row(const std::vector<double>& values);
    /// Mixed row: strings are written verbatim.
    void row_raw(const std::vector<std::string>& cells);
    void close();

private:
    std::ofstream out_;
    std::size_t columns_ = 0;
    std::filesystem::path path_;
};

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    static CsvTable read(const std::filesystem::path& path);

    int column_index(const std::string& name) const;  // -1 if absent
    std::vector<double> column(const std::string& name) const;
};

}  // namespace romscat

#endif
