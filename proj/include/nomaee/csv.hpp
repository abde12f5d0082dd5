#pragma once

#include <fstream>
#include <string>
#include <vector>

namespace nomaee {

// Minimal CSV emitter with deterministic number formatting, so identical
// inputs produce byte-identical files.
class CsvWriter {
public:
    CsvWriter(const std::string& path, const std::vector<std::string>& header);

    CsvWriter& cell(const std::string& value);
    CsvWriter& cell(double value);
    CsvWriter& cell(std::uint64_t value);
    CsvWriter& cell(std::int64_t value);
    void end_row();

private:
    std::ofstream out_;
    bool row_open_ = false;
};

std::string format_double(double value);

// Create the directory (and parents) if missing.
void ensure_directory(const std::string& path);

} // namespace nomaee
