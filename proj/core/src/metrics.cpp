#include "catgraph/metrics.hpp"

namespace catgraph {

std::string_view to_string(Verdict verdict)
{
    switch (verdict) {
    case Verdict::Path:
        return "path";
    case Verdict::NoPath:
        return "no-path";
    case Verdict::Abort:
        return "abort";
    }
    return "unknown";
}

} // namespace catgraph
