#include "opsis/experiment.hpp"

int main(int argc, char** argv) { return opsis::run_cli(argc, argv); }
