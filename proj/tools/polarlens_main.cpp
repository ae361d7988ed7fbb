#include "polarlens/cli.hpp"

int main(int argc, char** argv) { return polarlens::run(argc, argv); }
