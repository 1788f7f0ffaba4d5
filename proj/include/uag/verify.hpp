// The theorem verification suite: runs every mechanical check over a corpus
// of varieties and algebras and collects one line per check.

#ifndef UAG_VERIFY_HPP_
#define UAG_VERIFY_HPP_

#include <string>
#include <vector>

#include "uag/corpus.hpp"
#include "uag/io.hpp"

namespace uag {

  struct CheckLine {
    std::string suite;
    std::string check;
    std::string subject;
    bool        ok = true;
    std::string detail;
  };

  struct VerifyReport {
    std::vector<CheckLine> lines;

    bool ok() const {
      for (auto const& l : lines) {
        if (!l.ok) {
          return false;
        }
      }
      return true;
    }
    std::size_t failures() const;
  };

  // Throws InputError if the corpus is empty or a suite has no algebras.
  VerifyReport run_verification(std::vector<corpus::Suite> const& suites);

  std::string to_text(VerifyReport const& r);
  io::Json    to_json(VerifyReport const& r);

}  // namespace uag

#endif  // UAG_VERIFY_HPP_
