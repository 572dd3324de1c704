#include <iostream>

#include "svsa/acceptance.hpp"

int main() {
    const auto rows = svsa::run_acceptance();
    svsa::print_acceptance(rows, std::cout);
    return svsa::all_pass(rows) ? 0 : 1;
}
