#pragma once

#include <atomic>
#include <istream>
#include <map>
#include <mutex>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include <arpa/inet.h>
#include <netinet/in.h>
#include <sys/socket.h>
#include <unistd.h>

#include "ineq/env.hpp"
#include "ineq/io.hpp"

namespace ineq {

// NDJSON request handler. One Server per connection; sessions are
// independent episodes keyed by an integer id.
class Server {
public:
    explicit Server(EnvConfig cfg = {}) : cfg_(cfg) {}

    json handle_line(const std::string& line) {
        json req;
        try {
            req = json::parse(line);
        } catch (const json::exception& e) {
            return error(json(), "BAD_JSON", e.what());
        }
        if (!req.is_object()) return error(req, "BAD_REQUEST", "request must be an object");
        try {
            std::string op = req.value("op", "");
            if (op == "generate") return handle_generate(req);
            if (op == "reset") return handle_reset(req);
            if (op == "step") return handle_step(req);
            if (op == "close") return handle_close(req);
            return error(req, "BAD_REQUEST", "unknown op: " + op);
        } catch (const json::exception& e) {
            return error(req, "BAD_REQUEST", e.what());
        } catch (const FormatError& e) {
            return error(req, "BAD_RECORD", e.what());
        } catch (const std::exception& e) {
            return error(req, "INTERNAL", e.what());
        }
    }

    // Reads NDJSON requests until EOF; strictly sequential.
    void run_stream(std::istream& in, std::ostream& out) {
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            out << handle_line(line).dump() << '\n';
            out.flush();
        }
    }

private:
    json base(const json& req) {
        json j;
        j["v"] = kSchemaVersion;
        if (req.is_object() && req.contains("id")) j["id"] = req["id"];
        return j;
    }

    json error(const json& req, const std::string& code, const std::string& message) {
        json j = base(req);
        j["error"] = {{"code", code}, {"message", message}};
        return j;
    }

    json observation_json(const Observation& obs, const ProofState& state) {
        json g;
        g["nodes"] = json::array();
        for (const auto& n : obs.graph.nodes)
            g["nodes"].push_back({{"id", n.id},
                                  {"label", n.label},
                                  {"role", n.role},
                                  {"stmt_index", n.stmt_index},
                                  {"is_relation", n.is_relation}});
        g["edges"] = json::array();
        for (const auto& e : obs.graph.edges) g["edges"].push_back({{"from", e.from}, {"to", e.to}});
        return json{{"seq", obs.seq},
                    {"graph", g},
                    {"action_space_size", action_space_size(state, cfg_.axiom_set)}};
    }

    json handle_generate(const json& req) {
        GeneratorConfig cfg;
        cfg.k = req.value("k", cfg.k);
        cfg.l = req.value("l", cfg.l);
        cfg.degree = req.value("degree", cfg.degree);
        cfg.seed = req.value("seed", std::uint64_t{0});
        std::string axioms = req.value("axioms", "ordered-field");
        if (axioms == "field") cfg.axiom_set = AxiomSet::Field;
        else if (axioms != "ordered-field")
            return error(req, "BAD_REQUEST", "axioms must be field or ordered-field");
        Rng rng(cfg.seed);
        Theorem t = generate_with_config(cfg, rng);
        t.meta.seed = cfg.seed;
        json j = base(req);
        j["theorem"] = theorem_to_json(t);
        return j;
    }

    json handle_reset(const json& req) {
        Theorem t = theorem_from_json(req.at("theorem"));
        int id = next_session_++;
        Session& s = sessions_[id];
        s.env = Env(cfg_);
        Observation obs = s.env.reset(t);
        json j = base(req);
        j["session"] = id;
        j["observation"] = observation_json(obs, s.env.state());
        j["done"] = s.env.done();
        j["reward"] = s.env.last_reward();
        return j;
    }

    json handle_step(const json& req) {
        int id = req.at("session").get<int>();
        auto it = sessions_.find(id);
        if (it == sessions_.end()) return error(req, "SESSION_NOT_FOUND", "no such session");
        Action action = proof_step_from_json(req.at("action"));
        Env::StepOut out;
        try {
            out = it->second.env.step(action);
        } catch (const EpisodeFinished&) {
            return error(req, "EPISODE_FINISHED", "episode already finished");
        }
        json j = base(req);
        j["observation"] = observation_json(out.obs, it->second.env.state());
        j["reward"] = out.reward;
        j["done"] = out.done;
        j["info"] = out.info;
        return j;
    }

    json handle_close(const json& req) {
        int id = req.at("session").get<int>();
        if (sessions_.erase(id) == 0) return error(req, "SESSION_NOT_FOUND", "no such session");
        json j = base(req);
        j["closed"] = id;
        return j;
    }

    struct Session {
        Env env;
    };

    EnvConfig cfg_;
    std::map<int, Session> sessions_;
    int next_session_ = 1;
};

// ---------------------------------------------------------------------------
// TCP transport: one thread and one Server per connection, so connections
// never share episode state.
// ---------------------------------------------------------------------------

class TcpServer {
public:
    explicit TcpServer(EnvConfig cfg = {}) : cfg_(cfg) {}
    ~TcpServer() { stop(); }

    // Binds and listens; returns the bound port (useful with port 0).
    int start(int port) {
        fd_ = ::socket(AF_INET, SOCK_STREAM, 0);
        if (fd_ < 0) throw IoError("socket() failed");
        int one = 1;
        ::setsockopt(fd_, SOL_SOCKET, SO_REUSEADDR, &one, sizeof one);
        sockaddr_in addr{};
        addr.sin_family = AF_INET;
        addr.sin_addr.s_addr = htonl(INADDR_LOOPBACK);
        addr.sin_port = htons(static_cast<std::uint16_t>(port));
        if (::bind(fd_, reinterpret_cast<sockaddr*>(&addr), sizeof addr) < 0)
            throw IoError("bind() failed");
        if (::listen(fd_, 16) < 0) throw IoError("listen() failed");
        socklen_t len = sizeof addr;
        ::getsockname(fd_, reinterpret_cast<sockaddr*>(&addr), &len);
        running_ = true;
        accept_thread_ = std::thread([this] { accept_loop(); });
        return ntohs(addr.sin_port);
    }

    void stop() {
        if (!running_.exchange(false)) return;
        ::shutdown(fd_, SHUT_RDWR);
        ::close(fd_);
        if (accept_thread_.joinable()) accept_thread_.join();
        std::lock_guard lock(mu_);
        for (auto& t : workers_)
            if (t.joinable()) t.join();
        workers_.clear();
    }

    void wait() {
        if (accept_thread_.joinable()) accept_thread_.join();
    }

private:
    void accept_loop() {
        while (running_) {
            int client = ::accept(fd_, nullptr, nullptr);
            if (client < 0) break;
            std::lock_guard lock(mu_);
            workers_.emplace_back([this, client] { serve_client(client); });
        }
    }

    void serve_client(int client) {
        Server server(cfg_);
        std::string buf;
        char chunk[4096];
        for (;;) {
            ssize_t n = ::read(client, chunk, sizeof chunk);
            if (n <= 0) break;
            buf.append(chunk, static_cast<std::size_t>(n));
            std::size_t pos;
            while ((pos = buf.find('\n')) != std::string::npos) {
                std::string line = buf.substr(0, pos);
                buf.erase(0, pos + 1);
                if (line.empty()) continue;
                std::string resp = server.handle_line(line).dump() + "\n";
                std::size_t off = 0;
                while (off < resp.size()) {
                    ssize_t w = ::write(client, resp.data() + off, resp.size() - off);
                    if (w <= 0) { ::close(client); return; }
                    off += static_cast<std::size_t>(w);
                }
            }
        }
        ::close(client);
    }

    EnvConfig cfg_;
    int fd_ = -1;
    std::atomic<bool> running_{false};
    std::thread accept_thread_;
    std::mutex mu_;
    std::vector<std::thread> workers_;
};

} // namespace ineq
