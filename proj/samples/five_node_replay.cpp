// Five nodes, eight counters, two hashes per event. Four internal events are
// broadcast with some messages lost; prints each node's timestamp history
// and the verdict between E's and D's clocks after the third event.

#include <iostream>
#include <vector>

#include "bloomclock/bloomclock.hpp"

using namespace bloomclock;

int main() {
    const HashFamily family{8, 2, 10241};
    const NodeId A{0}, B{1}, C{2}, D{3}, E{4};

    const std::vector<ScriptedStep> script{
        {A, EventId("t1-event"), {B, D, E}}, // C misses t1
        {B, EventId("t2-event"), {A, E}},    // C and D miss t2
        {D, EventId("t3-event"), {C, E}},
        {E, EventId("t4-event"), {A, B, C, D}},
    };

    Network net(family, 5);
    for (const auto& step : script) {
        const auto index = net.emit(step.origin, step.event);
        if (step.origin == D) {
            const auto& sent = net.events()[index].bloom;
            std::cout << "D sends " << sent << ", E holds " << net.bloom(E) << ": "
                      << compare(sent, net.bloom(E)) << "\n";
        }
        for (auto to : step.recipients) net.deliver(index, to);
    }

    for (std::uint32_t n = 0; n < net.node_count(); ++n) {
        std::cout << node_label(NodeId{n}) << ":";
        for (const auto& entry : net.history(NodeId{n}).entries()) std::cout << ' ' << entry.clock;
        std::cout << "\n";
    }
    std::cout << "merge detections: " << net.merge_detections() << "\n";
}
