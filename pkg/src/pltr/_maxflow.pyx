# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled Dinic max-flow. Same contract as ``_maxflow_py.dinic``."""

import numpy as np
cimport numpy as cnp

ctypedef cnp.int64_t i64


def dinic(Py_ssize_t n_nodes, tails, heads, caps, Py_ssize_t source, Py_ssize_t sink):
    cdef i64[::1] t_ = np.ascontiguousarray(tails, dtype=np.int64)
    cdef i64[::1] h_ = np.ascontiguousarray(heads, dtype=np.int64)
    cdef i64[::1] c_ = np.ascontiguousarray(caps, dtype=np.int64)
    cdef Py_ssize_t n_edges = t_.shape[0]
    cdef Py_ssize_t n_arcs = 2 * n_edges
    cdef i64[::1] to = np.empty(n_arcs, dtype=np.int64)
    cdef i64[::1] res = np.empty(n_arcs, dtype=np.int64)
    cdef i64[::1] start = np.zeros(n_nodes + 1, dtype=np.int64)
    cdef i64[::1] fill = np.empty(n_nodes, dtype=np.int64)
    cdef i64[::1] adj = np.empty(n_arcs, dtype=np.int64)
    cdef i64[::1] level = np.empty(n_nodes, dtype=np.int64)
    cdef i64[::1] it = np.empty(n_nodes, dtype=np.int64)
    cdef i64[::1] queue = np.empty(n_nodes, dtype=np.int64)
    cdef i64[::1] path = np.empty(n_nodes, dtype=np.int64)
    cdef Py_ssize_t i, a, b, u, v, idx, end, head, tail, depth
    cdef i64 value = 0, push

    for i in range(n_edges):
        if c_[i] < 0:
            raise ValueError(f"negative capacity on edge {i}")
        to[2 * i] = h_[i]
        res[2 * i] = c_[i]
        to[2 * i + 1] = t_[i]
        res[2 * i + 1] = 0
        start[t_[i] + 1] += 1
        start[h_[i] + 1] += 1
    for v in range(n_nodes):
        start[v + 1] += start[v]
        fill[v] = start[v]
    for a in range(n_arcs):
        u = to[a ^ 1]
        adj[fill[u]] = a
        fill[u] += 1

    while source != sink:
        for v in range(n_nodes):
            level[v] = -1
        level[source] = 0
        queue[0] = source
        head, tail = 0, 1
        while head < tail:
            u = queue[head]
            head += 1
            for idx in range(start[u], start[u + 1]):
                a = adj[idx]
                v = to[a]
                if res[a] > 0 and level[v] < 0:
                    level[v] = level[u] + 1
                    queue[tail] = v
                    tail += 1
        if level[sink] < 0:
            break
        for v in range(n_nodes):
            it[v] = start[v]
        depth = 0
        u = source
        while True:
            if u == sink:
                push = res[path[0]]
                for i in range(1, depth):
                    if res[path[i]] < push:
                        push = res[path[i]]
                for i in range(depth):
                    res[path[i]] -= push
                    res[path[i] ^ 1] += push
                value += push
                depth = 0
                u = source
                continue
            end = start[u + 1]
            while it[u] < end:
                a = adj[it[u]]
                if res[a] > 0 and level[to[a]] == level[u] + 1:
                    break
                it[u] += 1
            if it[u] < end:
                a = adj[it[u]]
                path[depth] = a
                depth += 1
                u = to[a]
            else:
                if u == source:
                    break
                level[u] = -1
                depth -= 1
                a = path[depth]
                u = to[a ^ 1]
                it[u] += 1

    flows = np.empty(n_edges, dtype=np.int64)
    cdef i64[::1] f_ = flows
    for i in range(n_edges):
        f_[i] = c_[i] - res[2 * i]
    reaches = np.zeros(n_nodes, dtype=np.uint8)
    cdef cnp.uint8_t[::1] r_ = reaches
    r_[sink] = 1
    queue[0] = sink
    head, tail = 0, 1
    while head < tail:
        v = queue[head]
        head += 1
        for idx in range(start[v], start[v + 1]):
            b = adj[idx]
            u = to[b]
            if not r_[u] and res[b ^ 1] > 0:
                r_[u] = 1
                queue[tail] = u
                tail += 1
    return int(value), flows, reaches.view(np.bool_)
