#include "hashpebble/net.hpp"

#include <cerrno>
#include <cstring>
#include <functional>

#include <arpa/inet.h>
#include <netdb.h>
#include <netinet/in.h>
#include <sys/socket.h>
#include <unistd.h>

#include "hashpebble/errors.hpp"

namespace hashpebble::net {

namespace {

std::string errno_text(const char* what)
{
    return std::string(what) + ": " + std::strerror(errno);
}

addrinfo* resolve(const std::string& host, std::uint16_t port, bool passive)
{
    addrinfo hints{};
    hints.ai_family = AF_INET;
    hints.ai_socktype = SOCK_STREAM;
    if (passive)
        hints.ai_flags = AI_PASSIVE;
    addrinfo* res = nullptr;
    int rc = ::getaddrinfo(host.empty() ? nullptr : host.c_str(), std::to_string(port).c_str(), &hints, &res);
    if (rc != 0)
        throw NetError("cannot resolve " + host + ": " + ::gai_strerror(rc));
    return res;
}

}  // namespace

LineConnection::LineConnection(LineConnection&& other) noexcept
    : fd_(std::exchange(other.fd_, -1)), buffer_(std::move(other.buffer_))
{
}

LineConnection& LineConnection::operator=(LineConnection&& other) noexcept
{
    if (this != &other) {
        if (fd_ >= 0)
            ::close(fd_);
        fd_ = std::exchange(other.fd_, -1);
        buffer_ = std::move(other.buffer_);
    }
    return *this;
}

LineConnection::~LineConnection()
{
    if (fd_ >= 0)
        ::close(fd_);
}

LineConnection LineConnection::connect(const std::string& host, std::uint16_t port)
{
    std::unique_ptr<addrinfo, decltype(&::freeaddrinfo)> res(resolve(host, port, false), &::freeaddrinfo);
    for (addrinfo* ai = res.get(); ai; ai = ai->ai_next) {
        int fd = ::socket(ai->ai_family, ai->ai_socktype, ai->ai_protocol);
        if (fd < 0)
            continue;
        if (::connect(fd, ai->ai_addr, ai->ai_addrlen) == 0)
            return LineConnection(fd);
        ::close(fd);
    }
    throw NetError("cannot connect to " + host + ":" + std::to_string(port));
}

void LineConnection::send_line(std::string_view line)
{
    std::string msg(line);
    msg.push_back('\n');
    std::size_t sent = 0;
    while (sent < msg.size()) {
        ssize_t n = ::send(fd_, msg.data() + sent, msg.size() - sent, MSG_NOSIGNAL);
        if (n < 0) {
            if (errno == EINTR)
                continue;
            throw NetError(errno_text("send"));
        }
        sent += static_cast<std::size_t>(n);
    }
}

std::optional<std::string> LineConnection::read_line()
{
    for (;;) {
        auto nl = buffer_.find('\n');
        if (nl != std::string::npos) {
            std::string line = buffer_.substr(0, nl);
            buffer_.erase(0, nl + 1);
            return line;
        }
        char chunk[512];
        ssize_t n = ::recv(fd_, chunk, sizeof chunk, 0);
        if (n < 0) {
            if (errno == EINTR)
                continue;
            throw NetError(errno_text("recv"));
        }
        if (n == 0)
            return std::nullopt;
        buffer_.append(chunk, static_cast<std::size_t>(n));
    }
}

TcpServer::TcpServer(Owf owf, const std::string& host, std::uint16_t port) : owf_(std::move(owf))
{
    std::unique_ptr<addrinfo, decltype(&::freeaddrinfo)> res(resolve(host, port, true), &::freeaddrinfo);
    listen_fd_ = ::socket(res->ai_family, res->ai_socktype, res->ai_protocol);
    if (listen_fd_ < 0)
        throw NetError(errno_text("socket"));
    int yes = 1;
    ::setsockopt(listen_fd_, SOL_SOCKET, SO_REUSEADDR, &yes, sizeof yes);
    if (::bind(listen_fd_, res->ai_addr, res->ai_addrlen) != 0 || ::listen(listen_fd_, 16) != 0) {
        std::string msg = errno_text("bind/listen");
        ::close(listen_fd_);
        throw NetError(msg);
    }
    sockaddr_in addr{};
    socklen_t len = sizeof addr;
    ::getsockname(listen_fd_, reinterpret_cast<sockaddr*>(&addr), &len);
    port_ = ntohs(addr.sin_port);
}

TcpServer::~TcpServer()
{
    stop();
    for (auto& t : sessions_)
        if (t.joinable())
            t.join();
    if (listen_fd_ >= 0)
        ::close(listen_fd_);
}

void TcpServer::serve()
{
    while (!stopping_) {
        int fd = ::accept(listen_fd_, nullptr, nullptr);
        if (fd < 0) {
            if (errno == EINTR)
                continue;
            if (stopping_)
                break;
            throw NetError(errno_text("accept"));
        }
        std::lock_guard lock(mutex_);
        if (stopping_) {
            ::close(fd);
            break;
        }
        open_fds_.insert(fd);
        sessions_.emplace_back([this, fd] { run_session(fd); });
    }
}

void TcpServer::stop()
{
    std::lock_guard lock(mutex_);
    if (stopping_.exchange(true))
        return;
    ::shutdown(listen_fd_, SHUT_RDWR);
    for (int fd : open_fds_)
        ::shutdown(fd, SHUT_RDWR);
}

void TcpServer::run_session(int fd)
{
    {
        LineConnection conn(fd);
        wire::VerifierSession session(owf_);
        try {
            while (!session.closed()) {
                auto line = conn.read_line();
                if (!line)
                    break;
                conn.send_line(session.handle(*line).to_line());
            }
        } catch (const NetError&) {
            // peer went away; the session state dies with the connection
        }
        std::lock_guard lock(mutex_);
        open_fds_.erase(fd);
    }
}

ClientReport run_client(const Owf& owf, const ClientOptions& options,
                        const std::function<void(const ClientRound&)>& on_round)
{
    Prover prover(owf, options.k, options.seed, options.backend);
    LineConnection conn = LineConnection::connect(options.host, options.port);

    auto exchange = [&conn](const std::string& line) {
        conn.send_line(line);
        auto reply = conn.read_line();
        if (!reply)
            throw NetError("server closed the connection");
        return wire::parse_reply(*reply);
    };

    ClientReport report;
    auto record = [&](ClientRound r) {
        if (on_round)
            on_round(r);
        report.rounds.push_back(std::move(r));
    };

    record({0, 0, false, exchange(wire::register_line(options.k, prover.endpoint()))});
    if (report.rounds.back().reply.kind != wire::Reply::Kind::ok)
        return report;

    for (std::uint64_t round = 1; round <= options.rounds; ++round) {
        if (prover.remaining() == 0) {
            report.exhausted = true;
            break;
        }
        Release release = prover.next();
        if (options.tamper && *options.tamper == round) {
            Value forged = release.value;
            forged.bytes()[0] ^= 0x01;
            record({round, release.hashes, true, exchange(wire::auth_line(forged))});
            if (report.rounds.back().reply.kind == wire::Reply::Kind::err)
                break;
            release.hashes = 0;
        }
        record({round, release.hashes, false, exchange(wire::auth_line(release.value))});
        if (report.rounds.back().reply.kind == wire::Reply::Kind::err)
            break;
    }
    return report;
}

}  // namespace hashpebble::net
