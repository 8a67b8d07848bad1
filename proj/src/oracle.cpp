// Copyright (c) the idgs contributors.
// SPDX-License-Identifier: MIT
#include "idgs/oracle.hpp"

#include <algorithm>

namespace idgs {

bool MarkedOracle::eval(std::uint64_t x) const
{
    return std::binary_search(marked.begin(), marked.end(), x);
}

MarkedOracle make_oracle(int m, std::vector<std::uint64_t> marked)
{
    if (m < 1 || m > 63)
        throw ParameterError("make_oracle: width out of range");
    std::sort(marked.begin(), marked.end());
    marked.erase(std::unique(marked.begin(), marked.end()), marked.end());
    if (!marked.empty() && marked.back() >> m != 0)
        throw ParameterError("make_oracle: marked item does not fit in width");
    return MarkedOracle{m, std::move(marked)};
}

MarkedOracle marked_oracle(int m, const std::string& target)
{
    if (int(target.size()) != m)
        throw ParameterError("marked_oracle: target width " + std::to_string(target.size())
                             + " does not match register width " + std::to_string(m));
    return make_oracle(m, {parse_bits(target)});
}

MarkedOracle subfunction(const MarkedOracle& f, const SubfunctionId& id)
{
    if (id.k < 0 || id.k >= f.m)
        throw ParameterError("subfunction: k must satisfy 0 <= k < m");
    if (id.k < 63 && (id.i >> id.k) != 0)
        throw ParameterError("subfunction: i does not fit in k bits");
    std::vector<std::uint64_t> kept;
    std::uint64_t low = id.k == 0 ? ~0ull >> 1 : ((1ull << id.k) - 1ull);
    for (std::uint64_t t : f.marked)
        if (id.k == 0 || (t & low) == id.i)
            kept.push_back(t >> id.k);
    return make_oracle(f.m - id.k, std::move(kept));
}

MarkedOracle restrict_prefix(const MarkedOracle& f, const std::string& x_i)
{
    int p = int(x_i.size());
    if (p < 1 || p >= f.m)
        throw ParameterError("restrict_prefix: prefix width must satisfy 1 <= p < m");
    std::uint64_t want = parse_bits(x_i);
    int rest = f.m - p;
    std::vector<std::uint64_t> kept;
    for (std::uint64_t t : f.marked)
        if ((t >> rest) == want)
            kept.push_back(suffix_of(t, rest));
    return make_oracle(rest, std::move(kept));
}

int classical_eval(const MarkedOracle& f, const std::string& x)
{
    if (int(x.size()) != f.m)
        throw ParameterError("classical_eval: input width does not match oracle width");
    return f.eval(parse_bits(x)) ? 1 : 0;
}

} // namespace idgs
