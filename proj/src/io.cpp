#include "evar/io.hpp"

#include <charconv>
#include <fstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace evar {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
        s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
        s.remove_suffix(1);
    }
    return s;
}

double parse_number(std::string_view field, std::size_t line_no) {
    field = trim(field);
    double out = 0.0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), out);
    if (ec != std::errc{} || ptr != field.data() + field.size() || field.empty()) {
        throw std::runtime_error("line " + std::to_string(line_no) + ": cannot parse number '" +
                                 std::string(field) + "'");
    }
    return out;
}

}  // namespace

DiscreteDistribution read_distribution_csv(std::istream& in, InputFormat format) {
    std::vector<std::pair<double, double>> pairs;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string_view row = trim(line);
        if (row.empty() || row.front() == '#') continue;

        if (format == InputFormat::samples) {
            pairs.emplace_back(parse_number(row, line_no), 1.0);
            continue;
        }
        const auto comma = row.find(',');
        if (comma == std::string_view::npos) {
            throw std::runtime_error("line " + std::to_string(line_no) +
                                     ": expected 'value,weight'");
        }
        const double value = parse_number(row.substr(0, comma), line_no);
        const double weight = parse_number(row.substr(comma + 1), line_no);
        if (!(weight > 0.0)) {
            throw std::runtime_error("line " + std::to_string(line_no) +
                                     ": weight must be positive");
        }
        pairs.emplace_back(value, weight);
    }
    if (pairs.empty()) {
        throw std::runtime_error("input holds no data rows");
    }
    try {
        return DiscreteDistribution::from_weighted(pairs);
    } catch (const std::invalid_argument& e) {
        throw std::runtime_error(std::string("invalid input: ") + e.what());
    }
}

DiscreteDistribution read_distribution_file(const std::string& path, InputFormat format) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open input file: " + path);
    }
    return read_distribution_csv(in, format);
}

std::string format_double(double x) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, ptr);
}

}  // namespace evar
