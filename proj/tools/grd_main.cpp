#include "grd/cli.hpp"

int main(int argc, char** argv) { return grd::run(argc, argv); }
