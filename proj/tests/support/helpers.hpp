#pragma once

#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include "chilli/io.hpp"
#include "chilli/schema.hpp"

namespace chilli::testing {

// Writes contents to a unique file under the system temp dir and removes it
// on destruction.
class TempFile {
public:
    explicit TempFile(const std::string& contents, const std::string& suffix = ".tmp") {
        static int counter = 0;
        auto dir = std::filesystem::temp_directory_path();
        path_ = (dir / ("chilli_test_" + std::to_string(::getpid()) + "_" +
                        std::to_string(counter++) + suffix))
                    .string();
        io::write_text_file(path_, contents);
    }
    ~TempFile() {
        std::error_code ec;
        std::filesystem::remove(path_, ec);
    }
    TempFile(const TempFile&) = delete;
    TempFile& operator=(const TempFile&) = delete;

    const std::string& path() const { return path_; }

private:
    std::string path_;
};

inline FeatureSchema continuous_feature(const std::string& name, double lo, double hi) {
    FeatureSchema f;
    f.name = name;
    f.kind = FeatureKind::continuous;
    f.min = lo;
    f.max = hi;
    return f;
}

inline FeatureSchema cyclic_feature(const std::string& name, double period) {
    FeatureSchema f;
    f.name = name;
    f.kind = FeatureKind::cyclic;
    f.period = period;
    return f;
}

inline FeatureSchema categorical_feature(const std::string& name,
                                         std::vector<std::string> categories) {
    FeatureSchema f;
    f.name = name;
    f.kind = FeatureKind::categorical;
    f.categories = std::move(categories);
    return f;
}

} // namespace chilli::testing
