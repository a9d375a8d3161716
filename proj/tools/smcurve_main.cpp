#include "smcurve/cli.hpp"

int main(int argc, char** argv) { return smcurve::cli::run(argc, argv); }
