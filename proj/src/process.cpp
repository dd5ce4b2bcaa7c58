//===-- process.cpp -------------------------------------------------------===//
//
// Part of the optprefix project, under the Apache License v2.0.
// See LICENSE for license information.
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//

#include "process.hpp"

#include "errors.hpp"

#include <cerrno>
#include <chrono>
#include <cstring>
#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

namespace optprefix {

std::vector<std::string> split_command(std::string_view text) {
  std::vector<std::string> args;
  std::string current;
  bool in_token = false;
  char quote = 0;

  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (quote == '\'') {
      if (c == '\'')
        quote = 0;
      else
        current += c;
      continue;
    }
    if (c == '\\' && i + 1 < text.size()) {
      current += text[++i];
      in_token = true;
      continue;
    }
    if (quote == '"') {
      if (c == '"')
        quote = 0;
      else
        current += c;
      continue;
    }
    if (c == '\'' || c == '"') {
      quote = c;
      in_token = true; // an empty quoted string is still a token
      continue;
    }
    if (c == ' ' || c == '\t' || c == '\n') {
      if (in_token || !current.empty()) {
        args.push_back(std::move(current));
        current.clear();
        in_token = false;
      }
      continue;
    }
    current += c;
    in_token = true;
  }
  if (quote != 0)
    throw ParseError(std::string("unterminated quote in command: ") +
                     std::string(text));
  if (in_token || !current.empty())
    args.push_back(std::move(current));
  return args;
}

namespace {

// Drains a non-blocking fd; returns true once EOF has been reached.
bool drain(int fd, std::string &sink) {
  char buf[4096];
  for (;;) {
    ssize_t n = ::read(fd, buf, sizeof(buf));
    if (n > 0) {
      sink.append(buf, static_cast<std::size_t>(n));
      continue;
    }
    if (n == 0)
      return true;
    return false; // EAGAIN or a transient error
  }
}

void set_nonblocking(int fd) {
  int flags = ::fcntl(fd, F_GETFL, 0);
  ::fcntl(fd, F_SETFL, flags | O_NONBLOCK);
}

} // namespace

RunResult run_process(const std::vector<std::string> &argv,
                      std::optional<double> timeout_s) {
  if (argv.empty())
    throw ToolchainError("cannot run an empty command");

  int out_pipe[2];
  int err_pipe[2];
  if (::pipe(out_pipe) != 0 || ::pipe(err_pipe) != 0)
    throw ToolchainError(std::string("pipe: ") + std::strerror(errno));

  const auto start = std::chrono::steady_clock::now();
  pid_t pid = ::fork();
  if (pid < 0)
    throw ToolchainError(std::string("fork: ") + std::strerror(errno));

  if (pid == 0) {
    // Child: own process group so a timeout can kill descendants too.
    ::setpgid(0, 0);
    ::dup2(out_pipe[1], STDOUT_FILENO);
    ::dup2(err_pipe[1], STDERR_FILENO);
    ::close(out_pipe[0]);
    ::close(out_pipe[1]);
    ::close(err_pipe[0]);
    ::close(err_pipe[1]);

    std::vector<char *> cargv;
    cargv.reserve(argv.size() + 1);
    for (const std::string &a : argv)
      cargv.push_back(const_cast<char *>(a.c_str()));
    cargv.push_back(nullptr);
    ::execvp(cargv[0], cargv.data());
    ::fprintf(stderr, "exec %s: %s\n", cargv[0], std::strerror(errno));
    ::_exit(127);
  }

  ::close(out_pipe[1]);
  ::close(err_pipe[1]);
  set_nonblocking(out_pipe[0]);
  set_nonblocking(err_pipe[0]);

  RunResult result;
  struct pollfd fds[2] = {{out_pipe[0], POLLIN, 0}, {err_pipe[0], POLLIN, 0}};
  bool open_fds[2] = {true, true};
  std::string *sinks[2] = {&result.output, &result.error_output};

  const auto deadline =
      timeout_s ? start + std::chrono::duration_cast<
                              std::chrono::steady_clock::duration>(
                              std::chrono::duration<double>(*timeout_s))
                : std::chrono::steady_clock::time_point::max();

  while (open_fds[0] || open_fds[1]) {
    int wait_ms = -1;
    if (timeout_s) {
      auto now = std::chrono::steady_clock::now();
      if (now >= deadline) {
        result.timed_out = true;
        ::killpg(pid, SIGKILL);
        break;
      }
      wait_ms = static_cast<int>(
          std::chrono::duration_cast<std::chrono::milliseconds>(deadline - now)
              .count() +
          1);
    }
    int n = ::poll(fds, 2, wait_ms);
    if (n < 0) {
      if (errno == EINTR)
        continue;
      break;
    }
    if (n == 0)
      continue; // re-check the deadline
    for (int i = 0; i < 2; ++i) {
      if (!open_fds[i] || fds[i].revents == 0)
        continue;
      bool eof = drain(fds[i].fd, *sinks[i]);
      if (eof || (fds[i].revents & (POLLHUP | POLLERR))) {
        open_fds[i] = false;
        fds[i].fd = -1;
      }
    }
  }

  ::close(out_pipe[0]);
  ::close(err_pipe[0]);

  int status = 0;
  ::waitpid(pid, &status, 0);
  result.wall_s = std::chrono::duration<double>(
                      std::chrono::steady_clock::now() - start)
                      .count();
  if (WIFEXITED(status))
    result.exit_code = WEXITSTATUS(status);
  else if (WIFSIGNALED(status))
    result.exit_code = 128 + WTERMSIG(status);
  return result;
}

} // namespace optprefix
