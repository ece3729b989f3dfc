#pragma once

#include <filesystem>
#include <string>

namespace testing {

inline std::filesystem::path data_dir() { return ANALOGY_DATA_DIR; }
inline std::filesystem::path test_data_dir() { return ANALOGY_TEST_DATA_DIR; }

inline std::filesystem::path zoo_path() { return data_dir() / "zoo.data"; }
inline std::filesystem::path lexicon_path() { return data_dir() / "animal_lexicon.txt"; }
inline std::filesystem::path fixture_store_path() { return test_data_dir() / "fixture_embeddings.txt"; }
inline std::filesystem::path fixture_golden_path() { return test_data_dir() / "fixture_golden.json"; }

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag);
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& text);

}  // namespace testing
