#include "plsum/subprocess.hpp"

#include <fcntl.h>
#include <sys/resource.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <csignal>
#include <cstring>
#include <thread>

#include "plsum/error.hpp"

namespace plsum {

namespace {

struct Pipe {
  int read_end = -1;
  int write_end = -1;

  Pipe() {
    int fds[2];
    if (pipe2(fds, O_CLOEXEC) != 0) {
      throw DataError(std::string("pipe failed: ") + std::strerror(errno));
    }
    read_end = fds[0];
    write_end = fds[1];
  }
  ~Pipe() {
    close_read();
    close_write();
  }
  void close_read() {
    if (read_end >= 0) ::close(read_end);
    read_end = -1;
  }
  void close_write() {
    if (write_end >= 0) ::close(write_end);
    write_end = -1;
  }
};

void write_all(int fd, const std::string& data) {
  size_t off = 0;
  while (off < data.size()) {
    const ssize_t n = ::write(fd, data.data() + off, data.size() - off);
    if (n < 0) {
      if (errno == EINTR) continue;
      return;  // EPIPE: child stopped reading; whatever it produced still counts
    }
    off += static_cast<size_t>(n);
  }
}

void read_all(int fd, std::string& sink) {
  char buf[1 << 16];
  for (;;) {
    const ssize_t n = ::read(fd, buf, sizeof buf);
    if (n < 0) {
      if (errno == EINTR) continue;
      return;
    }
    if (n == 0) return;
    sink.append(buf, static_cast<size_t>(n));
  }
}

}  // namespace

SubprocessResult run_subprocess_lines(const std::string& command, const std::string& stdin_data) {
  // a dead child must surface as EPIPE on write, not kill this process
  ::signal(SIGPIPE, SIG_IGN);

  Pipe in, out, err;
  const pid_t pid = ::fork();
  if (pid < 0) throw DataError(std::string("fork failed: ") + std::strerror(errno));
  if (pid == 0) {
    ::dup2(in.read_end, STDIN_FILENO);
    ::dup2(out.write_end, STDOUT_FILENO);
    ::dup2(err.write_end, STDERR_FILENO);
    ::execl("/bin/sh", "sh", "-c", command.c_str(), static_cast<char*>(nullptr));
    ::_exit(127);
  }

  in.close_read();
  out.close_write();
  err.close_write();

  SubprocessResult result;
  std::thread writer([&] {
    write_all(in.write_end, stdin_data);
    in.close_write();
  });
  std::thread err_reader([&] { read_all(err.read_end, result.stderr_data); });
  read_all(out.read_end, result.stdout_data);

  writer.join();
  err_reader.join();

  int status = 0;
  struct rusage usage {};
  if (::wait4(pid, &status, 0, &usage) < 0) {
    throw DataError(std::string("wait failed: ") + std::strerror(errno));
  }
  result.max_rss_kb = usage.ru_maxrss;
  if (WIFEXITED(status)) result.exit_code = WEXITSTATUS(status);
  else if (WIFSIGNALED(status)) result.exit_code = -WTERMSIG(status);
  return result;
}

}  // namespace plsum
