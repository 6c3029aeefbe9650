#include "cusplab/serialization.hpp"

#include "cusplab/errors.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace cusplab {

namespace {

void dump(const Json& v, std::string& out, int indent)
{
    const std::string pad(static_cast<std::size_t>(indent + 2), ' ');
    const std::string close(static_cast<std::size_t>(indent), ' ');
    switch (v.type()) {
    case Json::value_t::object: {
        if (v.empty()) {
            out += "{}";
            return;
        }
        out += "{\n";
        bool first = true;
        for (auto it = v.begin(); it != v.end(); ++it) {
            if (!first)
                out += ",\n";
            first = false;
            out += pad + Json(it.key()).dump() + ": ";
            dump(it.value(), out, indent + 2);
        }
        out += "\n" + close + "}";
        return;
    }
    case Json::value_t::array: {
        if (v.empty()) {
            out += "[]";
            return;
        }
        // numeric arrays stay on one line
        bool flat = true;
        for (const auto& e : v)
            flat = flat && (e.is_number() || e.is_null() || e.is_boolean());
        out += flat ? "[" : "[\n";
        bool first = true;
        for (const auto& e : v) {
            if (!first)
                out += flat ? ", " : ",\n";
            first = false;
            if (!flat)
                out += pad;
            dump(e, out, indent + 2);
        }
        out += flat ? "]" : "\n" + close + "]";
        return;
    }
    case Json::value_t::number_float:
        out += std::isfinite(v.get<double>()) ? format_double(v.get<double>()) : "null";
        return;
    default:
        out += v.dump();
    }
}

} // namespace

std::string format_double(double x)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string dump_json(const Json& value)
{
    std::string out;
    dump(value, out, 0);
    out += '\n';
    return out;
}

Json parse_json(const std::string& text, const std::string& origin)
{
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw IoError("cannot parse JSON from " + origin + ": " + e.what());
    }
}

std::string read_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Json read_json_file(const std::filesystem::path& path) { return parse_json(read_file(path), path.string()); }

void write_file_atomic(const std::filesystem::path& path, const std::string& content)
{
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw IoError("cannot write " + tmp.string());
        out << content;
        out.flush();
        if (!out)
            throw IoError("short write to " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec)
        throw IoError("cannot rename " + tmp.string() + " to " + path.string() + ": " + ec.message());
}

} // namespace cusplab
