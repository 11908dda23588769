// Copyright 2026 The zvass Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cctype>
#include <cerrno>
#include <charconv>
#include <chrono>
#include <cstdlib>
#include <cstring>
#include <memory>
#include <sstream>

#include "backend.hpp"

namespace zvass::backend {
namespace {

struct SExpr {
  bool is_atom = true;
  std::string atom;
  std::vector<SExpr> list;
  std::size_t offset = 0;
};

class SExprReader {
 public:
  explicit SExprReader(std::string_view text) : text_(text) {}

  bool at_end() {
    skip();
    return pos_ >= text_.size();
  }

  SExpr read() {
    skip();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    SExpr e;
    e.offset = pos_;
    const char ch = text_[pos_];
    if (ch == '(') {
      ++pos_;
      e.is_atom = false;
      while (true) {
        skip();
        if (pos_ >= text_.size()) fail("unterminated list");
        if (text_[pos_] == ')') {
          ++pos_;
          break;
        }
        e.list.push_back(read());
      }
    } else if (ch == ')') {
      fail("unexpected ')'");
    } else if (ch == '|') {
      const auto end = text_.find('|', pos_ + 1);
      if (end == std::string_view::npos) fail("unterminated quoted symbol");
      e.atom = std::string(text_.substr(pos_ + 1, end - pos_ - 1));
      pos_ = end + 1;
    } else if (ch == '"') {
      std::size_t i = pos_ + 1;
      while (i < text_.size() && !(text_[i] == '"' && (i + 1 >= text_.size() || text_[i + 1] != '"'))) {
        i += text_[i] == '"' ? 2 : 1;
      }
      if (i >= text_.size()) fail("unterminated string");
      e.atom = std::string(text_.substr(pos_, i + 1 - pos_));
      pos_ = i + 1;
    } else {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_])) &&
             text_[pos_] != '(' && text_[pos_] != ')') {
        ++pos_;
      }
      e.atom = std::string(text_.substr(start, pos_ - start));
    }
    return e;
  }

  [[noreturn]] void fail(const std::string& msg) const { fail_at(pos_, msg); }
  [[noreturn]] static void fail_at(std::size_t at, const std::string& msg) {
    throw Error(ErrorKind::kParse, "model: offset " + std::to_string(at) + ": " + msg);
  }

 private:
  void skip() {
    while (pos_ < text_.size()) {
      if (std::isspace(static_cast<unsigned char>(text_[pos_]))) {
        ++pos_;
      } else if (text_[pos_] == ';') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

Int int_value(const SExpr& e) {
  if (e.is_atom) {
    Int v = 0;
    const char* last = e.atom.data() + e.atom.size();
    auto [ptr, ec] = std::from_chars(e.atom.data(), last, v);
    if (e.atom.empty() || ec != std::errc() || ptr != last) {
      SExprReader::fail_at(e.offset, "expected integer literal, got '" + e.atom + "'");
    }
    return v;
  }
  if (e.list.size() == 2 && e.list[0].is_atom && e.list[0].atom == "-") {
    return -int_value(e.list[1]);
  }
  SExprReader::fail_at(e.offset, "expected integer literal");
}

long env_long(const char* name, long fallback) {
  const char* s = std::getenv(name);
  if (s == nullptr || *s == '\0') return fallback;
  char* end = nullptr;
  const long v = std::strtol(s, &end, 10);
  return (end && *end == '\0' && v > 0) ? v : fallback;
}

struct Fd {
  int fd = -1;
  ~Fd() { reset(); }
  void reset() {
    if (fd >= 0) ::close(fd);
    fd = -1;
  }
};

}  // namespace

std::string_view status_name(Status s) {
  switch (s) {
    case Status::kSat: return "sat";
    case Status::kUnsat: return "unsat";
    case Status::kUnknown: return "unknown";
  }
  return "unknown";
}

SolverConfig SolverConfig::from_env() {
  SolverConfig c;
  if (const char* cmd = std::getenv("ZVASS_SOLVER_CMD"); cmd && *cmd) c.command = cmd;
  c.timeout_ms = env_long("ZVASS_TIMEOUT_MS", c.timeout_ms);
  return c;
}

pa::Assignment parse_model(std::string_view text) {
  SExprReader r(text);
  pa::Assignment out;
  while (!r.at_end()) {
    SExpr top = r.read();
    if (top.is_atom) SExprReader::fail_at(top.offset, "expected a model list");
    std::size_t first = 0;
    if (!top.list.empty() && top.list[0].is_atom) {
      if (top.list[0].atom != "model") continue;  // e.g. (error "...")
      first = 1;
    }
    for (std::size_t i = first; i < top.list.size(); ++i) {
      const SExpr& def = top.list[i];
      if (def.is_atom || def.list.empty() || !def.list[0].is_atom) {
        SExprReader::fail_at(def.offset, "expected a binding");
      }
      if (def.list[0].atom != "define-fun") continue;
      if (def.list.size() != 5 || !def.list[1].is_atom || def.list[2].is_atom) {
        SExprReader::fail_at(def.offset, "malformed define-fun");
      }
      if (!def.list[2].list.empty()) continue;  // function, not a constant
      if (!def.list[3].is_atom || def.list[3].atom != "Int") continue;
      out[def.list[1].atom] = int_value(def.list[4]);
    }
  }
  return out;
}

std::string print_model(const pa::Assignment& a) {
  std::ostringstream out;
  out << "(\n";
  for (const auto& [name, v] : a) {
    out << "  (define-fun " << smt_symbol(name) << " () Int ";
    if (v < 0) {
      out << "(- " << std::to_string(v).substr(1) << ")";
    } else {
      out << v;
    }
    out << ")\n";
  }
  out << ")\n";
  return out.str();
}

SolverResult invoke(const std::string& script, const SolverConfig& config) {
  int in_pipe[2], out_pipe[2];
  if (::pipe(in_pipe) != 0 || ::pipe(out_pipe) != 0) {
    throw Error(ErrorKind::kSolver, std::string("pipe: ") + std::strerror(errno));
  }
  const auto started = std::chrono::steady_clock::now();
  const pid_t pid = ::fork();
  if (pid < 0) throw Error(ErrorKind::kSolver, std::string("fork: ") + std::strerror(errno));
  if (pid == 0) {
    ::setpgid(0, 0);
    ::dup2(in_pipe[0], 0);
    ::dup2(out_pipe[1], 1);
    ::dup2(out_pipe[1], 2);
    ::close(in_pipe[0]);
    ::close(in_pipe[1]);
    ::close(out_pipe[0]);
    ::close(out_pipe[1]);
    ::execl("/bin/sh", "sh", "-c", config.command.c_str(), static_cast<char*>(nullptr));
    ::_exit(127);
  }
  ::setpgid(pid, pid);
  ::close(in_pipe[0]);
  ::close(out_pipe[1]);
  Fd to_child{in_pipe[1]}, from_child{out_pipe[0]};
  ::fcntl(to_child.fd, F_SETFL, O_NONBLOCK);
  ::signal(SIGPIPE, SIG_IGN);

  std::string output;
  std::size_t written = 0;
  bool timed_out = false;
  char buf[65536];
  while (from_child.fd >= 0) {
    const auto now = std::chrono::steady_clock::now();
    const long elapsed =
        std::chrono::duration_cast<std::chrono::milliseconds>(now - started).count();
    if (elapsed >= config.timeout_ms) {
      timed_out = true;
      break;
    }
    pollfd fds[2];
    nfds_t nfds = 0;
    fds[nfds++] = {from_child.fd, POLLIN, 0};
    if (to_child.fd >= 0) fds[nfds++] = {to_child.fd, POLLOUT, 0};
    const int ready = ::poll(fds, nfds, static_cast<int>(std::min(config.timeout_ms - elapsed, 1000L)));
    if (ready < 0 && errno != EINTR) break;
    if (ready <= 0) continue;
    if (nfds == 2 && (fds[1].revents & (POLLOUT | POLLERR | POLLHUP))) {
      const ssize_t n = ::write(to_child.fd, script.data() + written, script.size() - written);
      if (n > 0) written += static_cast<std::size_t>(n);
      if (n < 0 && errno != EAGAIN) written = script.size();
      if (written >= script.size()) to_child.reset();
    }
    if (fds[0].revents & (POLLIN | POLLHUP | POLLERR)) {
      const ssize_t n = ::read(from_child.fd, buf, sizeof buf);
      if (n > 0) {
        output.append(buf, static_cast<std::size_t>(n));
      } else if (n == 0 || errno != EAGAIN) {
        from_child.reset();
      }
    }
  }
  if (timed_out) ::kill(-pid, SIGKILL);
  to_child.reset();
  from_child.reset();
  int wstatus = 0;
  ::waitpid(pid, &wstatus, 0);

  SolverResult r;
  r.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                     std::chrono::steady_clock::now() - started)
                     .count();
  if (timed_out) {
    r.status = Status::kUnknown;
    r.diagnostics = "timeout after " + std::to_string(config.timeout_ms) + " ms";
    return r;
  }
  std::istringstream in(output);
  std::string first;
  in >> first;
  if (first == "sat") {
    r.status = Status::kSat;
  } else if (first == "unsat") {
    r.status = Status::kUnsat;
  } else if (first == "unknown") {
    r.status = Status::kUnknown;
    r.diagnostics = "solver answered unknown";
  } else {
    std::string exit_info = WIFEXITED(wstatus) ? "exit " + std::to_string(WEXITSTATUS(wstatus))
                                               : "abnormal termination";
    throw Error(ErrorKind::kSolver, "solver '" + config.command + "' (" + exit_info +
                                        ") gave no check-sat answer: " + output.substr(0, 400));
  }
  if (r.status == Status::kSat) {
    const std::string rest = output.substr(output.find("sat") + 3);
    if (rest.find("define-fun") != std::string::npos || rest.find('(') != std::string::npos) {
      r.model = parse_model(rest);
    }
  }
  return r;
}

}  // namespace zvass::backend
