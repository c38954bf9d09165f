// Builds a hard instance, shows the forced answers, and runs the lookup
// sketch through the random access code reduction.

#include <iostream>
#include <memory>

#include "annsketch/annsketch.hpp"

int main() {
    using namespace annsketch;

    const Code code = generate_code(4, 16, 4, 2026, 100);
    std::cout << "code: n=" << code.n << " length=" << code.code_length << " min_distance=" << code.min_distance
              << " (after " << code.attempts << " draws)\n";

    const auto x = BitVector::from_string("1001");
    const HardInstance inst = build_instance(code, x);
    for (std::size_t i = 1; i <= code.n; ++i) {
        const auto valid = enumerate_valid_answers(inst.dataset, inst.queries[i - 1], ApproxFactor::integer(2));
        std::cout << "q_" << i << " = " << inst.queries[i - 1].to_string() << "  valid answers:";
        for (std::size_t j : valid) std::cout << ' ' << j;
        std::cout << "  decoded bit " << decode_bit(code, i, inst.dataset.at(valid.front())) << '\n';
    }

    auto sketch = std::make_shared<LookupSketch>(code, 0.9);
    const auto cert = certify_nayak(sketch_to_qrac(sketch, code));
    std::cout << "noisy sketch: p=" << cert.worst_case_p << " needs >= " << cert.bound << " qubits, uses " << cert.m
              << '\n';
}
