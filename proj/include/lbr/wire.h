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

// Line-based strategy protocol for out-of-process bots.
//
//   QUERY <state>          -> BEGIN, H <hand-index> <dist> per live hand, END
//   SAMPLE <state> <hand>  -> ACT <action>
//   PING                   -> PONG
//   anything failing       -> ERR <message>
//
// <dist> is a list of <action>:<prob> tokens (f, c, r<to>). A raise band
// r<lo>-<hi>:<mass> spreads its mass uniformly over the integer raise-to
// amounts lo..hi.

#ifndef LBR_WIRE_H_
#define LBR_WIRE_H_

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>

#include "lbr/engine.h"
#include "lbr/harness.h"
#include "lbr/strategy.h"

namespace lbr {

class LineChannel {
 public:
  virtual ~LineChannel() = default;
  // Next line without the terminator. Throws OracleError on end of stream.
  virtual std::string read_line() = 0;
  virtual void write_line(std::string_view line) = 0;
  // True once the peer has closed its end and no full line is buffered.
  virtual bool at_eof() = 0;
};

// Reads from `in_fd`, writes to `out_fd`; closes them when `owns` is set.
class FdChannel : public LineChannel {
 public:
  FdChannel(int in_fd, int out_fd, bool owns);
  ~FdChannel() override;
  FdChannel(const FdChannel&) = delete;
  FdChannel& operator=(const FdChannel&) = delete;

  std::string read_line() override;
  void write_line(std::string_view line) override;
  bool at_eof() override;

 private:
  bool fill();

  int in_fd_;
  int out_fd_;
  bool owns_;
  std::string buffer_;
  std::size_t pos_ = 0;
  bool eof_ = false;
};

// Runs `command` under /bin/sh with its stdin and stdout connected to the
// channel. The child is terminated when the channel is destroyed.
std::unique_ptr<LineChannel> spawn_process(const std::string& command);

std::unique_ptr<LineChannel> connect_tcp(const std::string& host, int port);

class TcpListener {
 public:
  // Port 0 picks a free port. Listens on 127.0.0.1 unless `host` is given.
  explicit TcpListener(int port, const std::string& host = "127.0.0.1");
  ~TcpListener();
  TcpListener(const TcpListener&) = delete;
  TcpListener& operator=(const TcpListener&) = delete;

  int port() const { return port_; }
  std::unique_ptr<LineChannel> accept();
  void close();

 private:
  int fd_ = -1;
  int port_ = 0;
};

// Strategy oracle on the far side of a channel. Every response is checked:
// all live hands present, legal actions only, sums within 1e-6.
class RemoteOracle : public StrategyOracle {
 public:
  RemoteOracle(std::unique_ptr<LineChannel> channel, std::string name);

  std::string name() const override { return name_; }
  QueryResult query(const PublicState& s) override;
  Action sample_action(const PublicState& s, HandIndex hand, Rng& rng) override;
  void ping();

 private:
  std::string expect_line();

  std::unique_ptr<LineChannel> channel_;
  std::string name_;
};

// Answers requests from `channel` with `oracle` until the peer closes.
// States are replayed under `rules`.
void serve(StrategyOracle& oracle, LineChannel& channel, const GameRules& rules, uint64_t seed);

// Builtin name, "tcp:<host>:<port>" or "stdio:<command>". Remote specs open
// a fresh connection per call of the returned factory. Throws ParseError
// for an unknown spec.
OracleFactory make_oracle_factory(const std::string& spec);

}  // namespace lbr

#endif  // LBR_WIRE_H_
