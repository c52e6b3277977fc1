#include "covosc/cli.hpp"

int main(int argc, char** argv) { return covosc::cli::run(argc, argv); }
