#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "hashpebble/owf.hpp"
#include "hashpebble/protocol.hpp"
#include "hashpebble/wire.hpp"

namespace hashpebble::net {

/// Thrown for socket-level failures (resolve, connect, bind, I/O).
class NetError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A connected TCP socket exchanging LF-terminated lines.
class LineConnection {
public:
    explicit LineConnection(int fd) : fd_(fd) {}
    LineConnection(LineConnection&& other) noexcept;
    LineConnection& operator=(LineConnection&& other) noexcept;
    LineConnection(const LineConnection&) = delete;
    LineConnection& operator=(const LineConnection&) = delete;
    ~LineConnection();

    static LineConnection connect(const std::string& host, std::uint16_t port);

    void send_line(std::string_view line);
    /// Next line without its terminator, or nullopt on orderly close.
    std::optional<std::string> read_line();

    int fd() const { return fd_; }

private:
    int fd_ = -1;
    std::string buffer_;
};

/// Verifier server: one session per connection, each on its own thread.
class TcpServer {
public:
    /// Binds and listens immediately; port 0 picks an ephemeral port.
    TcpServer(Owf owf, const std::string& host, std::uint16_t port);
    ~TcpServer();
    TcpServer(const TcpServer&) = delete;
    TcpServer& operator=(const TcpServer&) = delete;

    std::uint16_t port() const { return port_; }

    /// Accepts connections until stop() is called.
    void serve();
    void stop();

private:
    void run_session(int fd);

    Owf owf_;
    int listen_fd_ = -1;
    std::uint16_t port_ = 0;
    std::atomic<bool> stopping_{false};
    std::mutex mutex_;
    std::set<int> open_fds_;
    std::vector<std::thread> sessions_;
};

struct ClientOptions {
    std::string host = "127.0.0.1";
    std::uint16_t port = 0;
    unsigned k = 8;
    Value seed;
    ProverBackend backend = ProverBackend::framework(Family::optimal);
    std::uint64_t rounds = 0;
    std::optional<std::uint64_t> tamper;  // 1-based round whose value gets one bit flipped
};

struct ClientRound {
    std::uint64_t round = 0;
    std::uint64_t hashes = 0;
    bool tampered = false;
    wire::Reply reply;
};

struct ClientReport {
    std::vector<ClientRound> rounds;
    bool exhausted = false;  // more rounds were requested than the chain holds
};

/// Registers the prover's endpoint, then runs the identification rounds.
/// A tampered round is followed by a retry with the honest value.
/// Calls on_round after every exchange, if set.
ClientReport run_client(const Owf& owf, const ClientOptions& options,
                        const std::function<void(const ClientRound&)>& on_round = {});

}  // namespace hashpebble::net
