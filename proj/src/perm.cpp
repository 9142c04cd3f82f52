#include "dualcover/perm.hpp"

#include <algorithm>
#include <sstream>

namespace dualcover {

Perm Perm::transposition(std::size_t n, int a, int b) {
    Perm p(n);
    std::swap(p.img_[static_cast<std::size_t>(a)], p.img_[static_cast<std::size_t>(b)]);
    return p;
}

Perm Perm::inverse() const {
    Perm r(size());
    for (std::size_t i = 0; i < size(); ++i) r.img_[static_cast<std::size_t>(img_[i])] = static_cast<int>(i);
    return r;
}

bool Perm::is_identity() const {
    for (std::size_t i = 0; i < img_.size(); ++i)
        if (img_[i] != static_cast<int>(i)) return false;
    return true;
}

bool Perm::is_transposition() const {
    int moved = 0;
    for (std::size_t i = 0; i < img_.size(); ++i) moved += img_[i] != static_cast<int>(i);
    if (moved != 2) return false;
    return (*this * *this).is_identity();
}

std::pair<int, int> Perm::moved_pair() const {
    int a = -1, b = -1;
    for (std::size_t i = 0; i < img_.size(); ++i)
        if (img_[i] != static_cast<int>(i)) {
            if (a < 0)
                a = static_cast<int>(i);
            else
                b = static_cast<int>(i);
        }
    if (a < 0 || b < 0) throw error("moved_pair: not a transposition");
    return {a, b};
}

std::vector<std::vector<int>> Perm::cycles() const {
    std::vector<std::vector<int>> out;
    std::vector<char> seen(img_.size(), 0);
    for (std::size_t i = 0; i < img_.size(); ++i) {
        if (seen[i]) continue;
        std::vector<int> cyc;
        int j = static_cast<int>(i);
        while (!seen[static_cast<std::size_t>(j)]) {
            seen[static_cast<std::size_t>(j)] = 1;
            cyc.push_back(j);
            j = img_[static_cast<std::size_t>(j)];
        }
        if (cyc.size() > 1) out.push_back(std::move(cyc));
    }
    return out;
}

std::string Perm::cycle_string() const {
    auto cyc = cycles();
    if (cyc.empty()) return "()";
    std::ostringstream os;
    for (const auto& c : cyc) {
        os << "(";
        for (std::size_t i = 0; i < c.size(); ++i) os << (i ? " " : "") << c[i] + 1;
        os << ")";
    }
    return os.str();
}

Perm Perm::parse_cycles(const std::string& text, std::size_t n) {
    Perm p(n);
    std::size_t i = 0;
    auto skip = [&] {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    };
    skip();
    if (text.substr(i) == "id") return p;
    while (i < text.size()) {
        skip();
        if (i >= text.size()) break;
        if (text[i] != '(') throw parse_error("expected '(' in cycle notation", i);
        ++i;
        std::vector<int> cyc;
        for (;;) {
            skip();
            if (i < text.size() && text[i] == ')') {
                ++i;
                break;
            }
            if (i < text.size() && text[i] == ',') {
                ++i;
                continue;
            }
            std::size_t at = i;
            long v = 0;
            bool got = false;
            while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
                v = v * 10 + (text[i] - '0');
                got = true;
                ++i;
            }
            if (!got) throw parse_error("expected index in cycle notation", at);
            if (v < 1 || static_cast<std::size_t>(v) > n)
                throw parse_error("cycle index out of range", at);
            cyc.push_back(static_cast<int>(v - 1));
        }
        if (!cyc.empty()) {
            std::vector<int> img(n);
            for (std::size_t k = 0; k < n; ++k) img[k] = static_cast<int>(k);
            for (std::size_t k = 0; k < cyc.size(); ++k)
                img[static_cast<std::size_t>(cyc[k])] = cyc[(k + 1) % cyc.size()];
            p = p * Perm(img);
        }
        skip();
    }
    return p;
}

bool perms_transitive(const std::vector<Perm>& gens, std::size_t n) {
    if (n == 0) return true;
    std::vector<char> seen(n, 0);
    std::vector<int> stack = {0};
    seen[0] = 1;
    std::size_t count = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (const auto& g : gens) {
            for (int w : {g(v), g.inverse()(v)}) {
                if (!seen[static_cast<std::size_t>(w)]) {
                    seen[static_cast<std::size_t>(w)] = 1;
                    ++count;
                    stack.push_back(w);
                }
            }
        }
    }
    return count == n;
}

}  // namespace dualcover
