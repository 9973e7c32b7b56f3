# cython: language_level=3
# distutils: language = c++
"""C++ census kernel.

Same contract as _census_py.census_levels; the hash set and the frontier
live entirely in C++ so the walk never touches Python objects per state.
"""

from libcpp.string cimport string
from libcpp.unordered_set cimport unordered_set
from libcpp.vector cimport vector


def census_levels(seeds, max_states):
    """Level sizes of the reverse BFS from the seed states.

    seeds: list of bytes (parts descending, one byte per part).
    Returns (sizes, capped) exactly as the pure kernel does.
    """
    cdef unordered_set[string] seen
    cdef vector[string] frontier
    cdef vector[string] nxt
    cdef string st, pred
    cdef long long cap = max_states
    cdef size_t i, j, k, m
    cdef int v, prev
    cdef bint capped = False

    for s in seeds:
        st = <string>s
        if seen.insert(st).second:
            frontier.push_back(st)

    sizes = []
    while frontier.size() > 0 and not capped:
        sizes.append(frontier.size())
        nxt.clear()
        for i in range(frontier.size()):
            st = frontier[i]
            m = st.size()
            prev = -1
            for j in range(m):
                v = <unsigned char>st[j]
                if v == prev:
                    continue
                prev = v
                if v < <int>m - 1:
                    break
                pred.clear()
                pred.reserve(<size_t>v + 1)
                for k in range(m):
                    if k != j:
                        pred.push_back(<char>((<unsigned char>st[k]) + 1))
                for k in range(<size_t>(v - <int>m + 1)):
                    pred.push_back(<char>1)
                if seen.insert(pred).second:
                    nxt.push_back(pred)
            if <long long>seen.size() > cap:
                capped = True
                break
        if not capped:
            frontier.swap(nxt)
    return sizes, capped
