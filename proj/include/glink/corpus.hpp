#pragma once

#include "glink/diagram.hpp"

#include <string>
#include <vector>

namespace glink {

/// Built-in diagram corpus; the files under corpus/ are generated from this
/// table and kept bit-identical by the test suite.
struct CorpusEntry {
    std::string name;
    std::string braid_text;
};

const std::vector<CorpusEntry>& corpus();
LinkDiagram corpus_diagram(const std::string& name);

}  // namespace glink
