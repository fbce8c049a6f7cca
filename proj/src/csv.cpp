#include "electra/csv.hpp"

#include "electra/rational.hpp"

#include <charconv>
#include <fstream>
#include <unistd.h>

namespace electra {

void atomic_write(const std::filesystem::path& path, const std::function<void(std::ostream&)>& body) {
    namespace fs = std::filesystem;
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    fs::path tmp = path;
    tmp += ".tmp." + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw ResourceError("cannot open " + tmp.string() + " for writing");
        body(out);
        out.flush();
        if (!out) {
            out.close();
            fs::remove(tmp);
            throw ResourceError("write failed: " + tmp.string());
        }
    }
    fs::rename(tmp, path);
}

std::string format_double(double x) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

}  // namespace electra
