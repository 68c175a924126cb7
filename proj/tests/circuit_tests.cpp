#include <cmath>

#include "doctest.h"
#include "qcut/circuit.hpp"

using namespace qcut;

TEST_SUITE_BEGIN("circuit");

TEST_CASE("gate metadata is consistent") {
    for (GateKind kind : {GateKind::H, GateKind::X, GateKind::Y, GateKind::Z, GateKind::S,
                          GateKind::Sdg, GateKind::T, GateKind::Tdg, GateKind::SX, GateKind::SY,
                          GateKind::RX, GateKind::RY, GateKind::RZ, GateKind::CZ, GateKind::CX}) {
        CHECK(gate_kind_from_name(gate_name(kind)) == kind);
        CHECK(gate_arity(kind) == ((kind == GateKind::CZ || kind == GateKind::CX) ? 2 : 1));
        CHECK(gate_has_angle(kind) ==
              (kind == GateKind::RX || kind == GateKind::RY || kind == GateKind::RZ));
    }
    CHECK_THROWS_AS(gate_kind_from_name("ccx"), std::invalid_argument);
}

TEST_CASE("add validates operands") {
    Circuit c(3);
    c.add(GateKind::H, 0).add(GateKind::CX, 0, 1).add(GateKind::RZ, 2, -1, 0.25);
    CHECK(c.gates.size() == 3);
    CHECK(c.two_qubit_gate_count(1) == 1);
    CHECK(c.two_qubit_gate_count(2) == 0);

    CHECK_THROWS_AS(c.add(GateKind::H, 3), std::invalid_argument);       // out of range
    CHECK_THROWS_AS(c.add(GateKind::H, -1), std::invalid_argument);
    CHECK_THROWS_AS(c.add(GateKind::CX, 1, 1), std::invalid_argument);   // equal operands
    CHECK_THROWS_AS(c.add(GateKind::CX, 0, 3), std::invalid_argument);
    CHECK_THROWS_AS(c.add(GateKind::RX, 0, -1, NAN), std::invalid_argument);
}

TEST_CASE("equality ignores the name") {
    Circuit a(2, "left"), b(2, "right");
    a.add(GateKind::CX, 0, 1);
    b.add(GateKind::CX, 0, 1);
    CHECK(a == b);
    b.add(GateKind::H, 0);
    CHECK_FALSE(a == b);
}

TEST_CASE("text round-trip is bit exact") {
    Circuit c(4, "demo");
    c.add(GateKind::H, 0)
        .add(GateKind::RZ, 1, -1, 0.1234567890123456789)
        .add(GateKind::RX, 2, -1, -3.0e-17)
        .add(GateKind::CX, 0, 3)
        .add(GateKind::CZ, 2, 1)
        .add(GateKind::RY, 3, -1, 6.283185307179586);
    const Circuit back = parse_circuit(serialize_circuit(c));
    CHECK(back == c);
    for (std::size_t i = 0; i < c.gates.size(); ++i)
        CHECK(back.gates[i].angle == c.gates[i].angle);  // exact, not approximate
}

TEST_CASE("json round-trip is bit exact and auto-detected") {
    Circuit c(3);
    c.add(GateKind::RY, 0, -1, 1.0 / 3.0).add(GateKind::CX, 1, 2).add(GateKind::T, 1);
    const std::string json = serialize_circuit_json(c);
    CHECK(json.front() == '{');
    const Circuit back = parse_circuit(json);
    CHECK(back == c);
    CHECK(back.gates[0].angle == c.gates[0].angle);
}

TEST_CASE("text format accepts comments and blank lines") {
    const Circuit c = parse_circuit("# header\n"
                                    "qubits 2\n"
                                    "\n"
                                    "h 0   # superpose\n"
                                    "cx 0 1\n");
    CHECK(c.n_qubits == 2);
    CHECK(c.gates.size() == 2);
    CHECK(c.gates[1].kind == GateKind::CX);
}

TEST_CASE("parse errors carry the line number") {
    auto line_of = [](const std::string& text) {
        try {
            parse_circuit(text);
        } catch (const ParseError& e) {
            return e.line();
        }
        return -1;
    };
    CHECK(line_of("qubits 2\nh 0\nfrob 1\n") == 3);     // unknown gate
    CHECK(line_of("qubits 2\ncx 0\n") == 2);            // missing operand
    CHECK(line_of("qubits 2\nh 0 1\n") == 2);           // extra operand
    CHECK(line_of("qubits 2\nrz 0\n") == 2);            // missing angle
    CHECK(line_of("qubits 2\nh 5\n") == 2);             // out of range
    CHECK(line_of("h 0\n") == 1);                       // missing qubits header
    CHECK_THROWS_AS(parse_circuit("{\"n_qubits\": 2"), ParseError);
}

TEST_SUITE_END();
