#include "glink/corpus.hpp"

#include <stdexcept>

namespace glink {

const std::vector<CorpusEntry>& corpus() {
    static const std::vector<CorpusEntry> entries = {
        {"unknot", "strands=1;"},
        {"hopf+", "strands=2; s1 s1"},
        {"hopf-", "strands=2; s1^-1 s1^-1"},
        {"trefoil", "strands=2; s1 s1 s1"},
        {"trefoil-", "strands=2; s1^-1 s1^-1 s1^-1"},
        {"figure8", "strands=3; s1 s2^-1 s1 s2^-1"},
        {"solomon", "strands=2; s1 s1 s1 s1"},
        {"t2_5", "strands=2; s1 s1 s1 s1 s1"},
        {"t2_6", "strands=2; s1 s1 s1 s1 s1 s1"},
        {"t2_7", "strands=2; s1 s1 s1 s1 s1 s1 s1"},
        {"t2_8", "strands=2; s1 s1 s1 s1 s1 s1 s1 s1"},
        {"t3_3", "strands=3; s1 s2 s1 s2 s1 s2"},
        {"t3_4", "strands=3; s1 s2 s1 s2 s1 s2 s1 s2"},
    };
    return entries;
}

LinkDiagram corpus_diagram(const std::string& name) {
    for (const auto& e : corpus())
        if (e.name == name) return braid_closure(parse_braid(e.braid_text));
    throw std::invalid_argument("unknown corpus diagram: " + name);
}

}  // namespace glink
