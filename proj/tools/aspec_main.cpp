#include "aspec/aspec.hpp"

int main(int argc, char** argv) { return aspec::cli_main(argc, argv); }
