#include <pjl/cli.hpp>

int main(int argc, char** argv) { return pjl::cli::main_entry(argc, argv, std::cout, std::cerr); }
