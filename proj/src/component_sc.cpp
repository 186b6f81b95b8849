#include "gncoset/component_sc.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <stdexcept>

namespace gncoset {

const char* node_kind_name(NodeKind k) {
    switch (k) {
        case NodeKind::Rate0: return "rate0";
        case NodeKind::Rate1: return "rate1";
        case NodeKind::Rep: return "rep";
        case NodeKind::Spc: return "spc";
        case NodeKind::Ml4: return "ml4";
        case NodeKind::Branch: return "branch";
    }
    return "?";
}

std::size_t NodePlan::count(NodeKind k) const {
    std::size_t n = 0;
    for (const auto& nd : nodes) n += (nd.kind == k);
    return n;
}

NodePlan classify(const std::vector<uint32_t>& frozen, std::size_t n_sub,
                  const ScOptions& opt) {
    if (!is_pow2(n_sub) || n_sub < 2)
        throw std::invalid_argument("classify: n_sub must be a power of two, >= 2");
    std::vector<uint8_t> is_frozen(n_sub, 0);
    for (std::size_t idx = 0; idx < frozen.size(); ++idx) {
        if (frozen[idx] >= n_sub)
            throw std::invalid_argument("classify: frozen index out of range");
        if (idx > 0 && frozen[idx] <= frozen[idx - 1])
            throw std::invalid_argument("classify: frozen indices must be strictly ascending");
        is_frozen[frozen[idx]] = 1;
    }
    std::vector<uint32_t> prefix(n_sub + 1, 0);
    for (std::size_t l = 0; l < n_sub; ++l) prefix[l + 1] = prefix[l] + is_frozen[l];

    NodePlan plan;
    plan.n_sub = uint32_t(n_sub);

    std::function<int32_t(uint32_t, uint32_t)> build = [&](uint32_t start, uint32_t len) -> int32_t {
        const uint32_t nf = prefix[start + len] - prefix[start];
        NodeKind kind = NodeKind::Branch;
        if (len == 1) {
            kind = nf ? NodeKind::Rate0 : NodeKind::Rate1;
        } else if (opt.fast) {
            if (nf == len) {
                kind = NodeKind::Rate0;
            } else if (len < opt.special_max_len && nf == 0) {
                kind = NodeKind::Rate1;
            } else if (len < opt.special_max_len && nf == len - 1 && !is_frozen[start + len - 1]) {
                kind = NodeKind::Rep;
            } else if (len < opt.special_max_len && nf == 1 && is_frozen[start] && opt.enable_spc) {
                kind = NodeKind::Spc;
            } else if (len == 4 && opt.enable_ml4) {
                kind = NodeKind::Ml4;
            }
        }
        const int32_t idx = int32_t(plan.nodes.size());
        plan.nodes.push_back(ScNode{kind, start, len, -1, -1});
        if (kind == NodeKind::Branch) {
            const int32_t l = build(start, len / 2);
            const int32_t r = build(start + len / 2, len / 2);
            plan.nodes[idx].left = l;
            plan.nodes[idx].right = r;
        }
        return idx;
    };
    build(0, uint32_t(n_sub));
    return plan;
}

ComponentDecoder::ComponentDecoder(std::vector<uint32_t> frozen, std::size_t n_sub,
                                   ScOptions opt, QuantSpec quant)
    : frozen_(std::move(frozen)),
      n_sub_(n_sub),
      opt_(opt),
      quant_(quant),
      plan_(classify(frozen_, n_sub, opt)) {
    if (opt_.use_boxplus && !quant_.float_mode)
        throw std::invalid_argument("boxplus check-node update is a float-mode reference only");
    is_frozen_.assign(n_sub_, 0);
    for (uint32_t f : frozen_) is_frozen_[f] = 1;
    const unsigned depths = log2_exact(n_sub_) + 1;
    alpha_.resize(depths);
    for (unsigned d = 0; d < depths; ++d) alpha_[d].resize(std::max<std::size_t>(1, n_sub_ >> d));
    synd_.resize(n_sub_);

    ml_slot_.assign(plan_.nodes.size(), -1);
    for (std::size_t idx = 0; idx < plan_.nodes.size(); ++idx) {
        const auto& nd = plan_.nodes[idx];
        if (nd.kind != NodeKind::Ml4) continue;
        std::vector<uint8_t> words;
        for (unsigned m = 0; m < 16; ++m) {
            bool ok = true;
            uint8_t u[4];
            for (unsigned l = 0; l < 4; ++l) {
                u[l] = (m >> l) & 1u;
                if (u[l] && is_frozen_[nd.start + l]) ok = false;
            }
            if (!ok) continue;
            gn_transform(std::span<uint8_t>(u, 4));
            words.insert(words.end(), u, u + 4);
        }
        ml_slot_[idx] = int32_t(ml_words_.size());
        ml_words_.push_back(std::move(words));
    }
}

bool ComponentDecoder::syndrome_check(std::span<const uint8_t> c_hat) {
    if (c_hat.size() != n_sub_)
        throw std::invalid_argument("syndrome_check: estimate length != n_sub");
    std::copy(c_hat.begin(), c_hat.end(), synd_.begin());
    gn_transform(synd_);
    for (uint32_t f : frozen_) {
        if (synd_[f]) return true;
    }
    return false;
}

void ComponentDecoder::decode_node(int32_t idx, unsigned depth, const double* alpha,
                                   uint8_t* beta) {
    const ScNode& nd = plan_.nodes[idx];
    const uint32_t len = nd.len;
    switch (nd.kind) {
        case NodeKind::Rate0:
            std::fill(beta, beta + len, uint8_t{0});
            return;
        case NodeKind::Rate1:
            for (uint32_t l = 0; l < len; ++l) beta[l] = uint8_t(hard_bit(alpha[l]));
            return;
        case NodeKind::Rep: {
            // Pairwise saturating fold, mirroring the g-cascade a plain SC
            // pass would run; keeps fixed-point behaviour identical.
            double* t = alpha_[depth + 1].data();
            uint32_t m = len / 2;
            for (uint32_t l = 0; l < m; ++l) t[l] = sat_add(alpha[l], alpha[l + m], quant_);
            for (m /= 2; m >= 1; m /= 2) {
                for (uint32_t l = 0; l < m; ++l) t[l] = sat_add(t[l], t[l + m], quant_);
                if (m == 1) break;
            }
            const uint8_t bit = uint8_t(hard_bit(t[0]));
            std::fill(beta, beta + len, bit);
            return;
        }
        case NodeKind::Spc: {
            uint8_t parity = 0;
            uint32_t weakest = 0;
            double weakest_mag = std::numeric_limits<double>::infinity();
            for (uint32_t l = 0; l < len; ++l) {
                const uint8_t b = uint8_t(hard_bit(alpha[l]));
                beta[l] = b;
                parity ^= b;
                const double mag = std::abs(alpha[l]);
                if (mag < weakest_mag) {
                    weakest_mag = mag;
                    weakest = l;
                }
            }
            if (parity) beta[weakest] ^= 1u;
            return;
        }
        case NodeKind::Ml4: {
            const auto& words = ml_words_[std::size_t(ml_slot_[idx])];
            double best = -std::numeric_limits<double>::infinity();
            const uint8_t* best_word = nullptr;
            for (std::size_t w = 0; w < words.size(); w += 4) {
                const uint8_t* c = &words[w];
                double corr = 0.0;
                for (unsigned l = 0; l < 4; ++l) corr += c[l] ? -alpha[l] : alpha[l];
                if (corr > best) {
                    best = corr;
                    best_word = c;
                }
            }
            std::copy(best_word, best_word + 4, beta);
            return;
        }
        case NodeKind::Branch: {
            const uint32_t h = len / 2;
            double* child = alpha_[depth + 1].data();
            if (opt_.use_boxplus) {
                for (uint32_t l = 0; l < h; ++l) child[l] = f_boxplus(alpha[l], alpha[l + h]);
            } else {
                for (uint32_t l = 0; l < h; ++l) child[l] = f_min(alpha[l], alpha[l + h]);
            }
            decode_node(nd.left, depth + 1, child, beta);
            for (uint32_t l = 0; l < h; ++l)
                child[l] = g_comb(alpha[l], alpha[l + h], beta[l], quant_);
            decode_node(nd.right, depth + 1, child, beta + h);
            for (uint32_t l = 0; l < h; ++l) beta[l] = uint8_t(beta[l] ^ beta[l + h]);
            return;
        }
    }
}

BitVec ComponentDecoder::sc_decode(std::span<const double> llr) {
    if (llr.size() != n_sub_)
        throw std::invalid_argument("sc_decode: LLR length != n_sub");
    BitVec c_hat(n_sub_);
    decode_node(0, 0, llr.data(), c_hat.data());
    return c_hat;
}

SubDecodeResult ComponentDecoder::subdecode(std::span<const double> llr) {
    SubDecodeResult res;
    res.c_hat.resize(n_sub_);
    subdecode_into(llr, res.c_hat, res.error_detected, res.sc_invoked);
    return res;
}

void ComponentDecoder::subdecode_into(std::span<const double> llr, std::span<uint8_t> c_hat,
                                      bool& error_detected, bool& sc_invoked) {
    if (llr.size() != n_sub_ || c_hat.size() != n_sub_)
        throw std::invalid_argument("subdecode: buffer length != n_sub");
    for (std::size_t j = 0; j < n_sub_; ++j) c_hat[j] = uint8_t(hard_bit(llr[j]));
    error_detected = syndrome_check({c_hat.data(), n_sub_});
    sc_invoked = error_detected;
    if (error_detected) decode_node(0, 0, llr.data(), c_hat.data());
}

bool syndrome_check(std::span<const uint8_t> c_hat, const std::vector<uint32_t>& frozen) {
    ComponentDecoder dec(frozen, c_hat.size());
    return dec.syndrome_check(c_hat);
}

BitVec sc_decode(std::span<const double> llr, const std::vector<uint32_t>& frozen,
                 const ScOptions& opt, QuantSpec quant) {
    ComponentDecoder dec(frozen, llr.size(), opt, quant);
    return dec.sc_decode(llr);
}

SubDecodeResult subdecode(std::span<const double> llr, const std::vector<uint32_t>& frozen,
                          const ScOptions& opt, QuantSpec quant) {
    ComponentDecoder dec(frozen, llr.size(), opt, quant);
    return dec.subdecode(llr);
}

} // namespace gncoset
