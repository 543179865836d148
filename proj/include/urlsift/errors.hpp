#pragma once

#include <stdexcept>
#include <string>

namespace urlsift {

// Error categories map onto CLI exit codes: usage=1, data=2, model=3.
class Error : public std::runtime_error {
 public:
  enum class Category { usage = 1, data = 2, model = 3 };

  Error(Category cat, const std::string& what) : std::runtime_error(what), cat_(cat) {}
  Category category() const { return cat_; }

 private:
  Category cat_;
};

class UsageError : public Error {
 public:
  explicit UsageError(const std::string& what) : Error(Category::usage, what) {}
};

// Bad input data: unreadable files, malformed datasets, out-of-contract values.
class DataError : public Error {
 public:
  explicit DataError(const std::string& what) : Error(Category::data, what) {}
};

// Bad or incompatible model files, digest mismatches, dimension mismatches.
class ModelError : public Error {
 public:
  explicit ModelError(const std::string& what) : Error(Category::model, what) {}
};

}  // namespace urlsift
