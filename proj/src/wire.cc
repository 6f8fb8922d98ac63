// Copyright 2026 The lbr-bench Authors.
//
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

#include "lbr/wire.h"

#include <arpa/inet.h>
#include <netdb.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <signal.h>
#include <sys/socket.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <charconv>
#include <cstring>

#include "lbr/errors.h"

namespace lbr {

namespace {

void ignore_sigpipe() {
  static const bool done = [] {
    ::signal(SIGPIPE, SIG_IGN);
    return true;
  }();
  (void)done;
}

std::string errno_text(const std::string& what) {
  return what + ": " + std::strerror(errno);
}

bool parse_int(std::string_view s, int64_t& out) {
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return !s.empty() && ec == std::errc() && ptr == s.data() + s.size();
}

// Splits "<head> <rest>" at the first space.
std::pair<std::string_view, std::string_view> split_word(std::string_view line) {
  auto sp = line.find(' ');
  if (sp == std::string_view::npos) return {line, {}};
  return {line.substr(0, sp), line.substr(sp + 1)};
}

class ProcessChannel : public FdChannel {
 public:
  ProcessChannel(int in_fd, int out_fd, pid_t pid) : FdChannel(in_fd, out_fd, true), pid_(pid) {}
  ~ProcessChannel() override {
    ::kill(pid_, SIGTERM);
    int status = 0;
    ::waitpid(pid_, &status, 0);
  }

 private:
  pid_t pid_;
};

}  // namespace

FdChannel::FdChannel(int in_fd, int out_fd, bool owns)
    : in_fd_(in_fd), out_fd_(out_fd), owns_(owns) {
  ignore_sigpipe();
}

FdChannel::~FdChannel() {
  if (!owns_) return;
  ::close(in_fd_);
  if (out_fd_ != in_fd_) ::close(out_fd_);
}

bool FdChannel::fill() {
  if (eof_) return false;
  if (pos_ > 0) {
    buffer_.erase(0, pos_);
    pos_ = 0;
  }
  char chunk[4096];
  while (true) {
    ssize_t n = ::read(in_fd_, chunk, sizeof(chunk));
    if (n > 0) {
      buffer_.append(chunk, static_cast<std::size_t>(n));
      return true;
    }
    if (n < 0 && errno == EINTR) continue;
    eof_ = true;
    return false;
  }
}

std::string FdChannel::read_line() {
  while (true) {
    auto nl = buffer_.find('\n', pos_);
    if (nl != std::string::npos) {
      std::string line = buffer_.substr(pos_, nl - pos_);
      pos_ = nl + 1;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      return line;
    }
    if (!fill()) throw OracleError("connection closed by peer");
  }
}

bool FdChannel::at_eof() {
  if (buffer_.find('\n', pos_) != std::string::npos) return false;
  return !fill() && buffer_.find('\n', pos_) == std::string::npos;
}

void FdChannel::write_line(std::string_view line) {
  std::string data(line);
  data += '\n';
  std::size_t off = 0;
  while (off < data.size()) {
    ssize_t n = ::write(out_fd_, data.data() + off, data.size() - off);
    if (n < 0) {
      if (errno == EINTR) continue;
      throw OracleError(errno_text("write failed"));
    }
    off += static_cast<std::size_t>(n);
  }
}

std::unique_ptr<LineChannel> spawn_process(const std::string& command) {
  ignore_sigpipe();
  int to_child[2], from_child[2];
  if (::pipe(to_child) != 0) throw OracleError(errno_text("pipe"));
  if (::pipe(from_child) != 0) {
    ::close(to_child[0]);
    ::close(to_child[1]);
    throw OracleError(errno_text("pipe"));
  }
  pid_t pid = ::fork();
  if (pid < 0) throw OracleError(errno_text("fork"));
  if (pid == 0) {
    ::dup2(to_child[0], STDIN_FILENO);
    ::dup2(from_child[1], STDOUT_FILENO);
    ::close(to_child[0]);
    ::close(to_child[1]);
    ::close(from_child[0]);
    ::close(from_child[1]);
    ::execl("/bin/sh", "sh", "-c", command.c_str(), static_cast<char*>(nullptr));
    ::_exit(127);
  }
  ::close(to_child[0]);
  ::close(from_child[1]);
  return std::make_unique<ProcessChannel>(from_child[0], to_child[1], pid);
}

std::unique_ptr<LineChannel> connect_tcp(const std::string& host, int port) {
  ignore_sigpipe();
  addrinfo hints{};
  hints.ai_family = AF_UNSPEC;
  hints.ai_socktype = SOCK_STREAM;
  addrinfo* res = nullptr;
  const std::string service = std::to_string(port);
  if (int rc = ::getaddrinfo(host.c_str(), service.c_str(), &hints, &res); rc != 0) {
    throw OracleError("cannot resolve " + host + ": " + ::gai_strerror(rc));
  }
  int fd = -1;
  for (addrinfo* ai = res; ai != nullptr; ai = ai->ai_next) {
    fd = ::socket(ai->ai_family, ai->ai_socktype, ai->ai_protocol);
    if (fd < 0) continue;
    if (::connect(fd, ai->ai_addr, ai->ai_addrlen) == 0) break;
    ::close(fd);
    fd = -1;
  }
  ::freeaddrinfo(res);
  if (fd < 0) throw OracleError(errno_text("cannot connect to " + host + ":" + service));
  int one = 1;
  ::setsockopt(fd, IPPROTO_TCP, TCP_NODELAY, &one, sizeof(one));
  return std::make_unique<FdChannel>(fd, fd, true);
}

TcpListener::TcpListener(int port, const std::string& host) {
  ignore_sigpipe();
  fd_ = ::socket(AF_INET, SOCK_STREAM, 0);
  if (fd_ < 0) throw OracleError(errno_text("socket"));
  int one = 1;
  ::setsockopt(fd_, SOL_SOCKET, SO_REUSEADDR, &one, sizeof(one));
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_port = htons(static_cast<uint16_t>(port));
  if (::inet_pton(AF_INET, host.c_str(), &addr.sin_addr) != 1) {
    close();
    throw OracleError("bad listen address " + host);
  }
  if (::bind(fd_, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) != 0 ||
      ::listen(fd_, 64) != 0) {
    std::string msg = errno_text("cannot listen on " + host + ":" + std::to_string(port));
    close();
    throw OracleError(msg);
  }
  socklen_t len = sizeof(addr);
  ::getsockname(fd_, reinterpret_cast<sockaddr*>(&addr), &len);
  port_ = ntohs(addr.sin_port);
}

TcpListener::~TcpListener() { close(); }

void TcpListener::close() {
  if (fd_ >= 0) {
    ::shutdown(fd_, SHUT_RDWR);
    ::close(fd_);
  }
  fd_ = -1;
}

std::unique_ptr<LineChannel> TcpListener::accept() {
  while (true) {
    int fd = ::accept(fd_, nullptr, nullptr);
    if (fd >= 0) {
      int one = 1;
      ::setsockopt(fd, IPPROTO_TCP, TCP_NODELAY, &one, sizeof(one));
      return std::make_unique<FdChannel>(fd, fd, true);
    }
    if (errno == EINTR) continue;
    throw OracleError(errno_text("accept"));
  }
}

RemoteOracle::RemoteOracle(std::unique_ptr<LineChannel> channel, std::string name)
    : channel_(std::move(channel)), name_(std::move(name)) {}

std::string RemoteOracle::expect_line() {
  std::string line = channel_->read_line();
  if (line.rfind("ERR", 0) == 0) {
    throw OracleError("remote error:" + line.substr(3));
  }
  return line;
}

void RemoteOracle::ping() {
  channel_->write_line("PING");
  std::string line = expect_line();
  if (line != "PONG") throw OracleError("expected PONG, got '" + line + "'");
}

QueryResult RemoteOracle::query(const PublicState& s) {
  const ActionSpace space = legal_actions(s);
  const std::string state = format_state(s);
  channel_->write_line("QUERY " + state);
  std::string line = expect_line();
  if (line != "BEGIN") throw OracleError("expected BEGIN, got '" + line + "'");

  const CardSet board(s.board());
  QueryResult q;
  int present = 0;
  while ((line = expect_line()) != "END") {
    auto [tag, rest] = split_word(line);
    auto [index_text, dist_text] = split_word(rest);
    int64_t index = -1;
    if (tag != "H" || !parse_int(index_text, index) || index < 0 || index >= kNumHands) {
      throw OracleError("bad hand line '" + line + "'");
    }
    const HandIndex hand(static_cast<int>(index));
    if (hand_mask(hand).intersects(board)) {
      throw OracleError("hand " + format_hand(hand) + " overlaps the board at " + state);
    }
    if (q.at(hand) != nullptr) throw OracleError("hand " + format_hand(hand) + " sent twice");
    ActionDistribution dist;
    try {
      dist = ActionDistribution::from_wire(dist_text);
    } catch (const ParseError& e) {
      throw OracleError("bad distribution for " + format_hand(hand) + ": " + e.what());
    }
    try {
      dist.validate(space);
    } catch (const OracleError& e) {
      throw OracleError(std::string(e.what()) + " for " + format_hand(hand) + " at " + state);
    }
    q.set(hand, std::move(dist));
    ++present;
  }
  int live = 0;
  for (int h = 0; h < kNumHands; ++h) {
    if (!hand_mask(HandIndex(h)).intersects(board)) ++live;
  }
  if (present != live) {
    throw OracleError("response covers " + std::to_string(present) + " of " +
                      std::to_string(live) + " live hands at " + state);
  }
  return q;
}

Action RemoteOracle::sample_action(const PublicState& s, HandIndex hand, Rng&) {
  const std::string state = format_state(s);
  channel_->write_line("SAMPLE " + state + " " + std::to_string(hand.value()));
  std::string line = expect_line();
  auto [tag, rest] = split_word(line);
  if (tag != "ACT") throw OracleError("expected ACT, got '" + line + "'");
  Action a;
  try {
    a = parse_action(rest);
  } catch (const ParseError&) {
    throw OracleError("bad action in '" + line + "'");
  }
  if (!legal_actions(s).is_legal(a)) {
    throw OracleError("remote sampled illegal action " + format_action(a) + " at " + state);
  }
  return a;
}

void serve(StrategyOracle& oracle, LineChannel& channel, const GameRules& rules, uint64_t seed) {
  Rng rng(seed);
  while (!channel.at_eof()) {
    const std::string line = channel.read_line();
    if (line.empty()) continue;
    auto [command, args] = split_word(line);
    try {
      if (command == "PING") {
        channel.write_line("PONG");
      } else if (command == "QUERY") {
        const PublicState s = state_from_string(args, rules);
        if (s.to_act() < 0) throw DomainError("no player to act");
        const QueryResult q = oracle.query(s);
        std::string out = "BEGIN\n";
        for (int h = 0; h < kNumHands; ++h) {
          const ActionDistribution* d = q.at(HandIndex(h));
          if (d == nullptr) continue;
          out += "H " + std::to_string(h) + " " + d->to_wire() + "\n";
        }
        out += "END";
        channel.write_line(out);
      } else if (command == "SAMPLE") {
        auto sp = args.rfind(' ');
        int64_t index = -1;
        if (sp == std::string_view::npos || !parse_int(args.substr(sp + 1), index) ||
            index < 0 || index >= kNumHands) {
          throw ParseError("SAMPLE needs <state> <hand-index>");
        }
        const PublicState s = state_from_string(args.substr(0, sp), rules);
        if (s.to_act() < 0) throw DomainError("no player to act");
        const HandIndex hand(static_cast<int>(index));
        if (hand_mask(hand).intersects(CardSet(s.board()))) {
          throw DomainError("hand overlaps the board");
        }
        channel.write_line("ACT " + format_action(oracle.sample_action(s, hand, rng)));
      } else {
        throw ParseError("unknown command '" + std::string(command) + "'");
      }
    } catch (const OracleError&) {
      throw;
    } catch (const std::exception& e) {
      channel.write_line(std::string("ERR ") + e.what());
    }
  }
}

OracleFactory make_oracle_factory(const std::string& spec) {
  if (make_builtin_oracle(spec) != nullptr) {
    return [spec] { return make_builtin_oracle(spec); };
  }
  if (spec.rfind("tcp:", 0) == 0) {
    const std::string endpoint = spec.substr(4);
    auto colon = endpoint.rfind(':');
    int64_t port = -1;
    if (colon == std::string::npos ||
        !parse_int(std::string_view(endpoint).substr(colon + 1), port) || port <= 0 ||
        port > 65535) {
      throw ParseError("expected tcp:<host>:<port>, got '" + spec + "'");
    }
    const std::string host = endpoint.substr(0, colon);
    return [spec, host, port]() -> std::unique_ptr<StrategyOracle> {
      return std::make_unique<RemoteOracle>(connect_tcp(host, static_cast<int>(port)), spec);
    };
  }
  if (spec.rfind("stdio:", 0) == 0) {
    const std::string command = spec.substr(6);
    if (command.empty()) throw ParseError("stdio: needs a command");
    return [spec, command]() -> std::unique_ptr<StrategyOracle> {
      return std::make_unique<RemoteOracle>(spawn_process(command), spec);
    };
  }
  throw ParseError("unknown opponent '" + spec + "'");
}

}  // namespace lbr
