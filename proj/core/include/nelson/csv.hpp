#ifndef NELSON_CSV_HPP
#define NELSON_CSV_HPP

#include <filesystem>
#include <fstream>
#include <span>
#include <string>
#include <vector>

namespace nelson {

// 17 significant digits: doubles round-trip exactly, runs diff clean.
std::string format_g17(double v);

class CsvWriter {
public:
    CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& columns);

    void row(std::span<const double> values);

private:
    std::ofstream out_;
    std::size_t n_cols_;
};

} // namespace nelson

#endif
