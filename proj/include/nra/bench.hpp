#pragma once

#include "nra/hybrid.hpp"

#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cstdio>
#include <functional>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace nra {

struct BenchInstance {
  std::string id;
  /// Builds the formula inside the worker process.
  std::function<PolyFormula()> load;
};

struct BenchRecord {
  std::string id;
  std::string answer = "unknown";  // sat, unsat or unknown
  double time_s = 0;
  int stage = 0;
  std::uint64_t num_fail_cells = 0;
  std::uint64_t lemmas = 0;
  std::uint64_t cells = 0;
};

namespace detail {

inline std::string csv_field(std::string s) {
  for (auto& ch : s)
    if (ch == ',' || ch == '\n' || ch == '"') ch = '_';
  return s;
}

struct Worker {
  pid_t pid = -1;
  int fd = -1;
  std::size_t index = 0;
  std::chrono::steady_clock::time_point start;
  std::string output;
};

/// Runs the instance in the current process and writes one result line.
inline void run_child(const BenchInstance& inst, const HybridParams& params, int fd) {
  std::string line;
  try {
    PolyFormula F = inst.load();
    HybridParams p = params;
    p.log = nullptr;
    HybridSolver solver(F, p);
    auto r = solver.solve();
    std::ostringstream out;
    out << answer_name(r.answer) << " " << r.stage << " " << r.num_fail_cells << " " << r.lemmas << " " << r.cells
        << " " << r.elapsed << "\n";
    line = out.str();
  } catch (const std::exception&) {
    line = "error\n";
  }
  std::size_t off = 0;
  while (off < line.size()) {
    ssize_t w = ::write(fd, line.data() + off, line.size() - off);
    if (w <= 0) break;
    off += static_cast<std::size_t>(w);
  }
}

inline void parse_child(const std::string& out, BenchRecord& rec) {
  std::istringstream in(out);
  std::string answer;
  if (!(in >> answer) || answer == "error") return;
  double elapsed = 0;
  if (!(in >> rec.stage >> rec.num_fail_cells >> rec.lemmas >> rec.cells >> elapsed)) return;
  rec.answer = answer;
  rec.time_s = elapsed;
}

}  // namespace detail

/// One worker process per instance, at most `jobs` at a time; a worker
/// exceeding `timeout` wall-clock seconds is killed and reported unknown.
inline std::vector<BenchRecord> run_bench(const std::vector<BenchInstance>& instances, const HybridParams& params,
                                          double timeout, unsigned jobs = 1) {
  std::vector<BenchRecord> records(instances.size());
  for (std::size_t i = 0; i < instances.size(); ++i) records[i].id = detail::csv_field(instances[i].id);
  std::vector<detail::Worker> running;
  std::size_t next = 0;
  HybridParams child_params = params;
  if (timeout > 0) child_params.timeout = timeout;
  jobs = std::max(1u, jobs);

  auto finish = [&](detail::Worker& w, bool killed) {
    int status = 0;
    waitpid(w.pid, &status, 0);
    BenchRecord& rec = records[w.index];
    if (killed) {
      rec.time_s = timeout;
    } else {
      detail::parse_child(w.output, rec);
      if (rec.answer == "unknown" && timeout > 0) rec.time_s = timeout;
    }
    ::close(w.fd);
  };

  while (next < instances.size() || !running.empty()) {
    while (next < instances.size() && running.size() < jobs) {
      int fds[2];
      if (::pipe(fds) != 0) throw std::runtime_error("pipe failed");
      std::fflush(nullptr);
      pid_t pid = ::fork();
      if (pid < 0) throw std::runtime_error("fork failed");
      if (pid == 0) {
        ::close(fds[0]);
        detail::run_child(instances[next], child_params, fds[1]);
        ::close(fds[1]);
        ::_exit(0);
      }
      ::close(fds[1]);
      running.push_back({pid, fds[0], next, std::chrono::steady_clock::now(), {}});
      ++next;
    }
    std::vector<pollfd> pfds;
    for (auto& w : running) pfds.push_back({w.fd, POLLIN, 0});
    ::poll(pfds.data(), pfds.size(), 20);
    for (std::size_t i = running.size(); i-- > 0;) {
      auto& w = running[i];
      bool done = false;
      if (pfds[i].revents & (POLLIN | POLLHUP)) {
        char buf[512];
        ssize_t r = ::read(w.fd, buf, sizeof buf);
        if (r > 0)
          w.output.append(buf, static_cast<std::size_t>(r));
        else
          done = true;
      }
      bool killed = false;
      if (!done && timeout > 0 &&
          std::chrono::duration<double>(std::chrono::steady_clock::now() - w.start).count() > timeout + 1.0) {
        ::kill(w.pid, SIGKILL);
        killed = true;
      }
      if (done || killed) {
        finish(w, killed);
        running.erase(running.begin() + static_cast<std::ptrdiff_t>(i));
      }
    }
  }
  return records;
}

inline void write_csv(std::ostream& out, const std::vector<BenchRecord>& records) {
  out << "id,answer,time_s,stage,numFailCells,lemmas,cells\n";
  std::size_t sat = 0, unsat = 0;
  for (auto& r : records) {
    out << r.id << "," << r.answer << "," << std::fixed << std::setprecision(3) << r.time_s << "," << r.stage << ","
        << r.num_fail_cells << "," << r.lemmas << "," << r.cells << "\n";
    sat += r.answer == "sat";
    unsat += r.answer == "unsat";
  }
  out << "#summary,#SAT=" << sat << ",#UNSAT=" << unsat << ",#ALL=" << sat + unsat << ",,,\n";
}

}  // namespace nra
