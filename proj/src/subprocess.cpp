#include "mtcheck/subprocess.hpp"

#include <cerrno>
#include <cstring>
#include <stdexcept>

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

namespace mtcheck::proc {

namespace {

[[noreturn]] void throw_errno(const char* what) {
  throw std::runtime_error(std::string(what) + ": " + std::strerror(errno));
}

void set_nonblocking(int fd) {
  int flags = fcntl(fd, F_GETFL, 0);
  if (flags < 0 || fcntl(fd, F_SETFL, flags | O_NONBLOCK) < 0)
    throw_errno("fcntl");
}

struct Pipe {
  int fds[2] = {-1, -1};
  Pipe() {
    if (pipe(fds) < 0) throw_errno("pipe");
  }
  ~Pipe() {
    close_read();
    close_write();
  }
  void close_read() {
    if (fds[0] >= 0) close(fds[0]);
    fds[0] = -1;
  }
  void close_write() {
    if (fds[1] >= 0) close(fds[1]);
    fds[1] = -1;
  }
};

} // namespace

CommandResult run(const std::vector<std::string>& argv,
                  const std::string& stdin_data,
                  const std::vector<std::pair<std::string, std::string>>& extra_env) {
  if (argv.empty()) throw std::runtime_error("run: empty argv");

  Pipe in, out, err;

  // SIGPIPE would kill us if the child exits before reading all of stdin.
  signal(SIGPIPE, SIG_IGN);

  pid_t pid = fork();
  if (pid < 0) throw_errno("fork");

  if (pid == 0) {
    dup2(in.fds[0], STDIN_FILENO);
    dup2(out.fds[1], STDOUT_FILENO);
    dup2(err.fds[1], STDERR_FILENO);
    in.close_read();
    in.close_write();
    out.close_read();
    out.close_write();
    err.close_read();
    err.close_write();

    for (const auto& [key, value] : extra_env)
      setenv(key.c_str(), value.c_str(), 1);

    std::vector<char*> cargv;
    cargv.reserve(argv.size() + 1);
    for (const auto& a : argv) cargv.push_back(const_cast<char*>(a.c_str()));
    cargv.push_back(nullptr);
    execvp(cargv[0], cargv.data());
    _exit(127);
  }

  in.close_read();
  out.close_write();
  err.close_write();

  set_nonblocking(in.fds[1]);
  set_nonblocking(out.fds[0]);
  set_nonblocking(err.fds[0]);

  CommandResult result;
  std::size_t written = 0;
  bool stdin_open = true;
  if (stdin_data.empty()) {
    in.close_write();
    stdin_open = false;
  }

  char buf[65536];
  while (true) {
    struct pollfd pfds[3];
    nfds_t n = 0;
    int out_idx = -1, err_idx = -1, in_idx = -1;
    if (out.fds[0] >= 0) {
      out_idx = n;
      pfds[n++] = {out.fds[0], POLLIN, 0};
    }
    if (err.fds[0] >= 0) {
      err_idx = n;
      pfds[n++] = {err.fds[0], POLLIN, 0};
    }
    if (stdin_open) {
      in_idx = n;
      pfds[n++] = {in.fds[1], POLLOUT, 0};
    }
    if (n == 0) break;

    if (poll(pfds, n, -1) < 0) {
      if (errno == EINTR) continue;
      throw_errno("poll");
    }

    if (out_idx >= 0 && (pfds[out_idx].revents & (POLLIN | POLLHUP))) {
      ssize_t got = read(out.fds[0], buf, sizeof buf);
      if (got > 0)
        result.out.append(buf, static_cast<std::size_t>(got));
      else if (got == 0 || (got < 0 && errno != EAGAIN && errno != EINTR))
        out.close_read();
    }
    if (err_idx >= 0 && (pfds[err_idx].revents & (POLLIN | POLLHUP))) {
      ssize_t got = read(err.fds[0], buf, sizeof buf);
      if (got > 0)
        result.err.append(buf, static_cast<std::size_t>(got));
      else if (got == 0 || (got < 0 && errno != EAGAIN && errno != EINTR))
        err.close_read();
    }
    if (in_idx >= 0 && (pfds[in_idx].revents & (POLLOUT | POLLERR | POLLHUP))) {
      if (pfds[in_idx].revents & (POLLERR | POLLHUP)) {
        in.close_write();
        stdin_open = false;
      } else {
        ssize_t put = write(in.fds[1], stdin_data.data() + written,
                            stdin_data.size() - written);
        if (put > 0) written += static_cast<std::size_t>(put);
        if ((put < 0 && errno != EAGAIN && errno != EINTR) ||
            written == stdin_data.size()) {
          in.close_write();
          stdin_open = false;
        }
      }
    }
  }

  int status = 0;
  if (waitpid(pid, &status, 0) < 0) throw_errno("waitpid");
  if (WIFEXITED(status))
    result.exit_code = WEXITSTATUS(status);
  else if (WIFSIGNALED(status))
    result.exit_code = 128 + WTERMSIG(status);
  return result;
}

} // namespace mtcheck::proc
