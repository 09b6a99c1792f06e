#include "udn/runner.hpp"

int main(int argc, char** argv) { return udn::cli_main(argc, argv); }
