#pragma once

#include <string>
#include <sys/types.h>

#include "obsorder/automorphism.hpp"

namespace obsorder {

/// Oracle living in a child process, spoken to with newline-delimited JSON
/// over its standard input and output:
///
///   request   {"id": k, "matrix": <matrix JSON>}
///   response  {"id": k, "matrix": <matrix JSON>}
///
/// The command line is split on whitespace; the child is started as
/// `program <dim> [remaining arguments...]`. Ids count up from 1 and every
/// response must echo the id of the request it answers.
///
/// I/O and protocol errors raise Errc::transport_failure. A well-formed answer
/// that is not a Hermitian matrix of the right dimension raises
/// Errc::oracle_not_automorphic.
class ProcessOracle final : public Oracle {
 public:
  ProcessOracle(const std::string& command_line, int dim);
  ~ProcessOracle() override;

  ProcessOracle(const ProcessOracle&) = delete;
  ProcessOracle& operator=(const ProcessOracle&) = delete;

  int dim() const override { return dim_; }
  HermitianMatrix query(const HermitianMatrix& a) override;

 private:
  void write_line(const std::string& line);
  std::string read_line();
  void shutdown() noexcept;

  int dim_;
  pid_t pid_ = -1;
  int to_child_ = -1;
  int from_child_ = -1;
  long long next_id_ = 1;
  std::string buffer_;
};

}  // namespace obsorder
