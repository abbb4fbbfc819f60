#include "obsorder/process_oracle.hpp"

#include <cerrno>
#include <csignal>
#include <cstring>
#include <sstream>
#include <vector>

#include <spawn.h>
#include <sys/wait.h>
#include <unistd.h>

#include "obsorder/matrix_json.hpp"

extern char** environ;

namespace obsorder {

namespace {

std::vector<std::string> split_command(const std::string& command_line) {
  std::vector<std::string> tokens;
  std::istringstream in(command_line);
  for (std::string token; in >> token;) tokens.push_back(token);
  return tokens;
}

[[noreturn]] void transport(const std::string& what) { fail(Errc::transport_failure, what); }

}  // namespace

ProcessOracle::ProcessOracle(const std::string& command_line, int dim) : dim_(dim) {
  if (dim < 1) fail(Errc::invalid_argument, "oracle dimension must be positive");
  const std::vector<std::string> tokens = split_command(command_line);
  if (tokens.empty()) transport("empty oracle command");

  std::vector<std::string> args{tokens.front(), std::to_string(dim)};
  args.insert(args.end(), tokens.begin() + 1, tokens.end());
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  argv.push_back(nullptr);

  // A child that exits early must surface as EPIPE, not kill this process.
  std::signal(SIGPIPE, SIG_IGN);

  int in_pipe[2];
  int out_pipe[2];
  if (pipe(in_pipe) != 0) transport(std::string("pipe: ") + std::strerror(errno));
  if (pipe(out_pipe) != 0) {
    close(in_pipe[0]);
    close(in_pipe[1]);
    transport(std::string("pipe: ") + std::strerror(errno));
  }

  posix_spawn_file_actions_t actions;
  posix_spawn_file_actions_init(&actions);
  posix_spawn_file_actions_adddup2(&actions, in_pipe[0], STDIN_FILENO);
  posix_spawn_file_actions_adddup2(&actions, out_pipe[1], STDOUT_FILENO);
  posix_spawn_file_actions_addclose(&actions, in_pipe[1]);
  posix_spawn_file_actions_addclose(&actions, out_pipe[0]);
  const int rc = posix_spawnp(&pid_, argv[0], &actions, nullptr, argv.data(), environ);
  posix_spawn_file_actions_destroy(&actions);
  close(in_pipe[0]);
  close(out_pipe[1]);
  to_child_ = in_pipe[1];
  from_child_ = out_pipe[0];
  if (rc != 0) {
    pid_ = -1;
    shutdown();
    transport("cannot launch '" + tokens.front() + "': " + std::strerror(rc));
  }
}

ProcessOracle::~ProcessOracle() { shutdown(); }

void ProcessOracle::shutdown() noexcept {
  if (to_child_ >= 0) close(to_child_);
  if (from_child_ >= 0) close(from_child_);
  to_child_ = from_child_ = -1;
  if (pid_ > 0) {
    int status = 0;
    waitpid(pid_, &status, 0);
    pid_ = -1;
  }
}

void ProcessOracle::write_line(const std::string& line) {
  std::string data = line + '\n';
  const char* p = data.data();
  std::size_t left = data.size();
  while (left > 0) {
    const ssize_t n = write(to_child_, p, left);
    if (n < 0) {
      if (errno == EINTR) continue;
      transport(std::string("write to oracle failed: ") + std::strerror(errno));
    }
    p += n;
    left -= static_cast<std::size_t>(n);
  }
}

std::string ProcessOracle::read_line() {
  for (;;) {
    const auto nl = buffer_.find('\n');
    if (nl != std::string::npos) {
      std::string line = buffer_.substr(0, nl);
      buffer_.erase(0, nl + 1);
      return line;
    }
    char chunk[4096];
    const ssize_t n = read(from_child_, chunk, sizeof chunk);
    if (n < 0) {
      if (errno == EINTR) continue;
      transport(std::string("read from oracle failed: ") + std::strerror(errno));
    }
    if (n == 0) transport("oracle closed its output");
    buffer_.append(chunk, static_cast<std::size_t>(n));
  }
}

HermitianMatrix ProcessOracle::query(const HermitianMatrix& a) {
  if (a.dim() != dim_) fail(Errc::dimension_mismatch, "query dimension differs from oracle dimension");
  if (to_child_ < 0) transport("oracle is not running");
  const long long id = next_id_++;
  Json request;
  request["id"] = id;
  request["matrix"] = matrix_to_json(a);
  write_line(dump_json(request));

  const std::string line = read_line();
  Json response;
  try {
    response = Json::parse(line);
  } catch (const nlohmann::json::exception& e) {
    transport(std::string("malformed oracle response: ") + e.what());
  }
  if (!response.is_object() || !response.contains("id") || !response["id"].is_number_integer() ||
      !response.contains("matrix"))
    transport("oracle response lacks \"id\" or \"matrix\"");
  if (response["id"].get<long long>() != id) {
    std::ostringstream os;
    os << "oracle answered id " << response["id"].get<long long>() << " to request " << id;
    transport(os.str());
  }

  HermitianMatrix out = [&] {
    try {
      return hermitian_from_json(response["matrix"]);
    } catch (const Error& e) {
      fail(Errc::oracle_not_automorphic, std::string("oracle answer is not a valid observable: ") + e.what());
    }
  }();
  if (out.dim() != dim_) fail(Errc::oracle_not_automorphic, "oracle answer has the wrong dimension");
  return out;
}

}  // namespace obsorder
