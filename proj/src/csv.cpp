#include "nomaee/csv.hpp"

#include <cstdio>
#include <filesystem>

#include "nomaee/errors.hpp"

namespace nomaee {

std::string format_double(double value) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", value);
    return buf;
}

void ensure_directory(const std::string& path) {
    std::error_code ec;
    std::filesystem::create_directories(path, ec);
    if (ec) throw invalid_parameter("cannot create directory '" + path + "': " + ec.message());
}

CsvWriter::CsvWriter(const std::string& path, const std::vector<std::string>& header) {
    out_.open(path, std::ios::binary | std::ios::trunc);
    if (!out_) throw invalid_parameter("cannot open '" + path + "' for writing");
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i) out_ << ',';
        out_ << header[i];
    }
    out_ << '\n';
}

CsvWriter& CsvWriter::cell(const std::string& value) {
    if (row_open_) out_ << ',';
    out_ << value;
    row_open_ = true;
    return *this;
}

CsvWriter& CsvWriter::cell(double value) { return cell(format_double(value)); }

CsvWriter& CsvWriter::cell(std::uint64_t value) { return cell(std::to_string(value)); }

CsvWriter& CsvWriter::cell(std::int64_t value) { return cell(std::to_string(value)); }

void CsvWriter::end_row() {
    out_ << '\n';
    row_open_ = false;
}

} // namespace nomaee
