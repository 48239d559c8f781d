#include "olc/algorithms.hpp"

#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <cstring>
#include <limits>
#include <map>
#include <set>
#include <thread>

namespace olc {

Color first_fit(const ColoringState& state, const WeightedInterval& cand) {
  const Color fresh = state.fresh_color();
  for (Color c = 0; c < fresh; ++c) {
    if (state.can_assign(cand, c)) return c;
  }
  return fresh;
}

Color random_fit(const ColoringState& state, const WeightedInterval& cand, std::mt19937_64& rng) {
  std::vector<Color> options;
  for (const auto& [color, members] : state.classes()) {
    if (state.can_assign(cand, color)) options.push_back(color);
  }
  options.push_back(state.fresh_color());
  return options[static_cast<std::size_t>(rng() % options.size())];
}

namespace {

std::map<Color, int> color_uses(const GraphView& view) {
  std::map<Color, int> uses;
  for (Color c : view.colors) ++uses[c];
  return uses;
}

bool graph_color_ok(const GraphView& view, const std::map<Color, int>& uses,
                    const std::set<Color>& blocked, Color c) {
  if (blocked.count(c)) return false;
  if (view.k) {
    auto it = uses.find(c);
    if (it != uses.end() && it->second >= *view.k) return false;
  }
  return true;
}

std::set<Color> neighbor_colors(const GraphView& view) {
  std::set<Color> out;
  for (int u : view.neighbors) out.insert(view.colors[static_cast<std::size_t>(u - 1)]);
  return out;
}

}  // namespace

Color graph_first_fit(const GraphView& view) {
  const auto uses = color_uses(view);
  const auto blocked = neighbor_colors(view);
  for (Color c = 0;; ++c) {
    if (graph_color_ok(view, uses, blocked, c)) return c;
  }
}

Color graph_random_fit(const GraphView& view, std::mt19937_64& rng) {
  const auto uses = color_uses(view);
  const auto blocked = neighbor_colors(view);
  std::vector<Color> options;
  for (const auto& [c, n] : uses) {
    if (graph_color_ok(view, uses, blocked, c)) options.push_back(c);
  }
  options.push_back(uses.empty() ? 0 : uses.rbegin()->first + 1);
  return options[static_cast<std::size_t>(rng() % options.size())];
}

Color FreshColor::choose(const GraphView& view, const Move&) {
  Color top = -1;
  for (Color c : view.colors) top = std::max(top, c);
  return top + 1;
}

ExternalAlgorithm::ExternalAlgorithm(std::string command, std::chrono::milliseconds timeout)
    : command_(std::move(command)), timeout_(timeout) {}

ExternalAlgorithm::~ExternalAlgorithm() { shutdown(true); }

void ExternalAlgorithm::begin(const Json& header) {
  if (pid_ > 0) throw ProtocolError("external algorithm already started");
  int in_pipe[2];
  int out_pipe[2];
  if (pipe(in_pipe) != 0 || pipe(out_pipe) != 0) {
    throw ProtocolError(std::string("pipe: ") + std::strerror(errno));
  }
  ::signal(SIGPIPE, SIG_IGN);
  const pid_t pid = fork();
  if (pid < 0) throw ProtocolError(std::string("fork: ") + std::strerror(errno));
  if (pid == 0) {
    setpgid(0, 0);
    dup2(in_pipe[0], STDIN_FILENO);
    dup2(out_pipe[1], STDOUT_FILENO);
    close(in_pipe[0]);
    close(in_pipe[1]);
    close(out_pipe[0]);
    close(out_pipe[1]);
    execl("/bin/sh", "sh", "-c", command_.c_str(), static_cast<char*>(nullptr));
    _exit(127);
  }
  close(in_pipe[0]);
  close(out_pipe[1]);
  pid_ = pid;
  to_child_ = in_pipe[1];
  from_child_ = out_pipe[0];
  write_line(header.dump());
}

Color ExternalAlgorithm::external_step(const Move& request) {
  if (pid_ <= 0) throw ProtocolError("external algorithm not started");
  write_line(move_request_json(request).dump());
  const std::string line = read_line();
  Json response;
  try {
    response = Json::parse(line);
  } catch (const Json::parse_error&) {
    throw ProtocolError("response is not JSON: " + line);
  }
  if (!response.is_object() || !response.contains("color") ||
      !response["color"].is_number_integer()) {
    throw ProtocolError("response lacks an integer \"color\": " + line);
  }
  const auto color = response["color"].get<long long>();
  if (color < 0 || color > std::numeric_limits<Color>::max()) {
    throw ProtocolError("color out of range: " + line);
  }
  return static_cast<Color>(color);
}

void ExternalAlgorithm::end() { shutdown(false); }

void ExternalAlgorithm::write_line(const std::string& line) {
  std::string data = line + "\n";
  std::size_t off = 0;
  while (off < data.size()) {
    const ssize_t n = ::write(to_child_, data.data() + off, data.size() - off);
    if (n < 0) {
      if (errno == EINTR) continue;
      throw ProtocolError(std::string("write to external algorithm failed: ") +
                          std::strerror(errno));
    }
    off += static_cast<std::size_t>(n);
  }
}

std::string ExternalAlgorithm::read_line() {
  const auto deadline = std::chrono::steady_clock::now() + timeout_;
  while (true) {
    if (auto nl = buffer_.find('\n'); nl != std::string::npos) {
      std::string line = buffer_.substr(0, nl);
      buffer_.erase(0, nl + 1);
      return line;
    }
    const auto left = std::chrono::duration_cast<std::chrono::milliseconds>(
        deadline - std::chrono::steady_clock::now());
    if (left.count() <= 0) throw Timeout("external algorithm did not answer in time");
    pollfd pfd{from_child_, POLLIN, 0};
    const int ready = ::poll(&pfd, 1, static_cast<int>(left.count()));
    if (ready < 0) {
      if (errno == EINTR) continue;
      throw ProtocolError(std::string("poll: ") + std::strerror(errno));
    }
    if (ready == 0) throw Timeout("external algorithm did not answer in time");
    char chunk[4096];
    const ssize_t n = ::read(from_child_, chunk, sizeof chunk);
    if (n < 0) {
      if (errno == EINTR) continue;
      throw ProtocolError(std::string("read: ") + std::strerror(errno));
    }
    if (n == 0) throw ProtocolError("external algorithm closed its output");
    buffer_.append(chunk, static_cast<std::size_t>(n));
  }
}

void ExternalAlgorithm::shutdown(bool force) {
  if (to_child_ >= 0) {
    close(to_child_);
    to_child_ = -1;
  }
  if (pid_ > 0) {
    int status = 0;
    if (force) {
      // Give a well-behaved child a moment to exit on EOF.
      for (int i = 0; i < 20; ++i) {
        if (waitpid(pid_, &status, WNOHANG) == pid_) {
          pid_ = -1;
          break;
        }
        std::this_thread::sleep_for(std::chrono::milliseconds(5));
      }
      if (pid_ > 0) {
        kill(-pid_, SIGKILL);
        waitpid(pid_, &status, 0);
      }
    } else {
      waitpid(pid_, &status, 0);
    }
    pid_ = -1;
  }
  if (from_child_ >= 0) {
    close(from_child_);
    from_child_ = -1;
  }
}

AlgorithmSpec parse_algorithm(const std::string& text, std::uint64_t seed) {
  AlgorithmSpec spec;
  spec.seed = seed;
  if (text == "first-fit" || text == "graph-first-fit") {
    spec.name = text;
  } else if (text == "random" || text == "random-fit") {
    spec.name = "random";
  } else if (text == "fresh" || text == "fresh-color") {
    spec.name = "fresh";
  } else if (text.rfind("external:", 0) == 0 && text.size() > 9) {
    spec.name = "external";
    spec.command = text.substr(9);
  } else {
    throw BadParameter("unknown algorithm \"" + text + "\"");
  }
  return spec;
}

AnyAlgorithm::AnyAlgorithm(const AlgorithmSpec& spec) : spec_(spec) {
  if (spec.name == "first-fit" || spec.name == "graph-first-fit") {
    owner_ = std::make_unique<FirstFit>();
  } else if (spec.name == "random") {
    owner_ = std::make_unique<RandomFit>(spec.seed);
  } else if (spec.name == "fresh") {
    owner_ = std::make_unique<FreshColor>();
  } else if (spec.name == "external") {
    owner_ = std::make_unique<ExternalAlgorithm>(spec.command);
  } else {
    throw BadParameter("unknown algorithm \"" + spec.name + "\"");
  }
  interval_ = owner_.get();
  graph_ = dynamic_cast<GraphAlgorithm*>(owner_.get());
}

AlgorithmInfo AnyAlgorithm::info() const {
  AlgorithmInfo info;
  info.name = spec_.name;
  if (spec_.name == "random") info.seed = spec_.seed;
  if (spec_.name == "external") info.command = spec_.command;
  return info;
}

}  // namespace olc
