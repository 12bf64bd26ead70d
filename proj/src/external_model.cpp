#include "parallax/external_model.hpp"

#include <cerrno>
#include <cstdio>
#include <cstring>
#include <mutex>
#include <sstream>

#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include "parallax/errors.hpp"
#include "parallax/log.hpp"
#include "parallax/rng.hpp"

namespace parallax {

namespace {

class line_process {
public:
    explicit line_process(const std::vector<std::string>& command) : command_(command) {
        int to_child[2], from_child[2];
        if (pipe(to_child) != 0 || pipe(from_child) != 0) throw_oracle("external model: pipe() failed");
        pid_ = fork();
        if (pid_ < 0) throw_oracle("external model: fork() failed");
        if (pid_ == 0) {
            dup2(to_child[0], STDIN_FILENO);
            dup2(from_child[1], STDOUT_FILENO);
            close(to_child[0]);
            close(to_child[1]);
            close(from_child[0]);
            close(from_child[1]);
            std::vector<char*> argv;
            argv.reserve(command.size() + 1);
            for (const auto& a : command) argv.push_back(const_cast<char*>(a.c_str()));
            argv.push_back(nullptr);
            execvp(argv[0], argv.data());
            std::fprintf(stderr, "exec failed: %s: %s\n", argv[0], std::strerror(errno));
            _exit(127);
        }
        close(to_child[0]);
        close(from_child[1]);
        in_ = fdopen(from_child[0], "r");
        out_ = fdopen(to_child[1], "w");
        if (!in_ || !out_) throw_oracle("external model: fdopen() failed");
    }

    ~line_process() {
        if (out_) fclose(out_);
        if (in_) fclose(in_);
        if (pid_ > 0) {
            int status = 0;
            if (waitpid(pid_, &status, WNOHANG) == 0) {
                kill(pid_, SIGTERM);
                waitpid(pid_, &status, 0);
            }
        }
    }

    line_process(const line_process&) = delete;
    line_process& operator=(const line_process&) = delete;

    void send_line(const std::string& line) {
        if (!out_) throw_oracle("external model: writing to a closed process");
        if (std::fputs(line.c_str(), out_) == EOF || std::fputc('\n', out_) == EOF)
            throw_oracle("external model: write failed (" + command_[0] + ")");
    }

    void flush() {
        if (out_ && std::fflush(out_) != 0) throw_oracle("external model: flush failed");
    }

    /// Reads one line without the trailing newline; empty optional-like flag
    /// via the return of false means EOF (child closed its stdout).
    bool read_line(std::string& line) {
        line.clear();
        int c;
        while ((c = std::fgetc(in_)) != EOF) {
            if (c == '\n') return true;
            line.push_back(static_cast<char>(c));
        }
        return !line.empty();
    }

    /// Closes stdin and reaps the child; returns its exit status.
    int finish() {
        if (out_) {
            fclose(out_);
            out_ = nullptr;
        }
        int status = 0;
        if (pid_ > 0) {
            waitpid(pid_, &status, 0);
            pid_ = -1;
        }
        return status;
    }

    const std::string& name() const { return command_[0]; }

private:
    std::vector<std::string> command_;
    pid_t pid_ = -1;
    FILE* in_ = nullptr;
    FILE* out_ = nullptr;
};

std::string format_point(std::span<const double> p) {
    std::string line;
    char buf[48];
    for (std::size_t k = 0; k < p.size(); ++k) {
        std::snprintf(buf, sizeof(buf), "%.17g", p[k]);
        if (k) line.push_back(' ');
        line += buf;
    }
    return line;
}

class external_model final : public perception_model {
public:
    explicit external_model(const std::vector<std::string>& command) : process_(command) {
        process_.send_line("PARALLAX-MODEL 1");
        process_.flush();
        std::string reply;
        if (!process_.read_line(reply)) throw_oracle("external model: no handshake reply from " + process_.name());
        std::istringstream ss(reply);
        std::string token;
        std::size_t d = 0;
        if (!(ss >> token >> d) || token != "OK" || d == 0)
            throw_oracle("external model: bad handshake reply '" + reply + "' (expected 'OK <dim>')");
        dim_ = d;
    }

    ~external_model() override {
        std::lock_guard lock(mutex_);
        if (!shut_down_) {
            try {
                process_.send_line("END");
                process_.flush();
            } catch (const error&) {
                // child already gone; the destructor reaps it
            }
            const int status = process_.finish();
            if (!WIFEXITED(status) || WEXITSTATUS(status) != 0)
                log_warn("external model exited abnormally (status " + std::to_string(status) + ")");
            shut_down_ = true;
        }
    }

    std::size_t dim() const override { return dim_; }
    std::string kind() const override { return "external"; }

protected:
    bool evaluate(std::span<const double> p) const override {
        auto verdicts = const_cast<external_model*>(this)->run_batch({std::vector<double>(p.begin(), p.end())}, true);
        return verdicts[0] != 0;
    }

    std::vector<std::uint8_t> evaluate_batch(const std::vector<std::vector<double>>& points) override {
        return run_batch(points, true);
    }

private:
    std::vector<std::uint8_t> run_batch(const std::vector<std::vector<double>>& points, bool spot_check) {
        std::lock_guard lock(mutex_);
        if (shut_down_) throw_oracle("external model: used after shutdown");
        auto verdicts = eval_locked(points);
        if (spot_check) {
            // determinism spot check: re-query 1% of the batch
            const std::size_t n_check = std::max<std::size_t>(1, points.size() / 100);
            rng gen(0x5b3c0a9d2f81e64bULL, batch_counter_++);
            std::vector<std::vector<double>> again;
            std::vector<std::size_t> idx;
            again.reserve(n_check);
            for (std::size_t s = 0; s < n_check; ++s) {
                const std::size_t i = static_cast<std::size_t>(gen.next_u64() % points.size());
                idx.push_back(i);
                again.push_back(points[i]);
            }
            count_queries(again.size());
            const auto redo = eval_locked(again);
            for (std::size_t s = 0; s < n_check; ++s)
                if (redo[s] != verdicts[idx[s]])
                    throw_oracle("external model: nondeterministic verdict for point " + std::to_string(idx[s]));
        }
        return verdicts;
    }

    std::vector<std::uint8_t> eval_locked(const std::vector<std::vector<double>>& points) {
        process_.send_line("EVAL " + std::to_string(points.size()));
        for (const auto& p : points) process_.send_line(format_point(p));
        process_.flush();
        std::vector<std::uint8_t> verdicts(points.size());
        std::string line;
        for (std::size_t i = 0; i < points.size(); ++i) {
            if (!process_.read_line(line))
                throw_oracle("external model: partial response (" + std::to_string(i) + " of " +
                             std::to_string(points.size()) + " verdicts)");
            if (line == "1")
                verdicts[i] = 1;
            else if (line == "0")
                verdicts[i] = 0;
            else
                throw_oracle("external model: unexpected token '" + line + "' (expected 0 or 1)");
        }
        return verdicts;
    }

    mutable std::mutex mutex_;
    line_process process_;
    std::size_t dim_ = 0;
    bool shut_down_ = false;
    std::uint64_t batch_counter_ = 0;
};

} // namespace

std::unique_ptr<perception_model> make_external_model(const std::vector<std::string>& command) {
    if (command.empty()) throw_input("external model: empty command");
    return std::make_unique<external_model>(command);
}

} // namespace parallax
