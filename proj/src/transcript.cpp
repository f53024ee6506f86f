#include "polyshare/transcript.hpp"

namespace polyshare {

std::string to_string(const Actor& a) {
    switch (a.kind) {
        case Actor::Kind::master:
            return "master";
        case Actor::Kind::source:
            return "source" + std::to_string(a.index);
        case Actor::Kind::worker:
            return "worker" + std::to_string(a.index);
    }
    return "?";
}

std::string to_string(Phase p) {
    switch (p) {
        case Phase::sharing:
            return "sharing";
        case Phase::compute:
            return "compute";
        case Phase::reconstruction:
            return "reconstruction";
    }
    return "?";
}

}  // namespace polyshare
