#pragma once

#include <cstdint>
#include <memory>
#include <utility>

namespace aplog {

// Persistent treap keyed by a 32-bit id. Updates copy the search path
// only, so copies of the map are O(1) and share structure.
template <class V>
class PMap {
public:
    const V* find(std::uint32_t k) const {
        const Node* n = root_.get();
        while (n) {
            if (k == n->key) return &n->value;
            n = k < n->key ? n->left.get() : n->right.get();
        }
        return nullptr;
    }

    void insert(std::uint32_t k, V v) {
        if (find(k)) root_ = erase(root_, k);
        root_ = insert(root_, std::make_shared<const Node>(Node{k, std::move(v), prio(k), nullptr, nullptr}));
        ++size_;
    }

    void erase(std::uint32_t k) {
        if (!find(k)) return;
        root_ = erase(root_, k);
        --size_;
    }

    std::size_t size() const { return size_; }
    bool empty() const { return size_ == 0; }

    // in key order
    template <class F>
    void forEach(F&& f) const {
        walk(root_.get(), f);
    }

private:
    struct Node;
    using Ptr = std::shared_ptr<const Node>;
    struct Node {
        std::uint32_t key;
        V value;
        std::uint32_t prio;
        Ptr left, right;
    };

    Ptr root_;
    std::size_t size_ = 0;

    static std::uint32_t prio(std::uint32_t k) {
        std::uint32_t x = k * 0x9E3779B1u;
        x ^= x >> 15;
        x *= 0x85EBCA77u;
        x ^= x >> 13;
        return x;
    }

    static Ptr with(const Ptr& n, Ptr l, Ptr r) {
        return std::make_shared<const Node>(Node{n->key, n->value, n->prio, std::move(l), std::move(r)});
    }

    // split into keys < k and keys > k (k absent)
    static std::pair<Ptr, Ptr> split(const Ptr& n, std::uint32_t k) {
        if (!n) return {nullptr, nullptr};
        if (n->key < k) {
            auto [l, r] = split(n->right, k);
            return {with(n, n->left, l), r};
        }
        auto [l, r] = split(n->left, k);
        return {l, with(n, r, n->right)};
    }

    static Ptr merge(const Ptr& a, const Ptr& b) {
        if (!a) return b;
        if (!b) return a;
        if (a->prio > b->prio) return with(a, a->left, merge(a->right, b));
        return with(b, merge(a, b->left), b->right);
    }

    static Ptr insert(const Ptr& n, const Ptr& item) {
        if (!n) return item;
        if (item->prio > n->prio) {
            auto [l, r] = split(n, item->key);
            return with(item, l, r);
        }
        if (item->key < n->key) return with(n, insert(n->left, item), n->right);
        return with(n, n->left, insert(n->right, item));
    }

    static Ptr erase(const Ptr& n, std::uint32_t k) {
        if (!n) return n;
        if (k == n->key) return merge(n->left, n->right);
        if (k < n->key) return with(n, erase(n->left, k), n->right);
        return with(n, n->left, erase(n->right, k));
    }

    template <class F>
    static void walk(const Node* n, F& f) {
        if (!n) return;
        walk(n->left.get(), f);
        f(n->key, n->value);
        walk(n->right.get(), f);
    }
};

}  // namespace aplog
