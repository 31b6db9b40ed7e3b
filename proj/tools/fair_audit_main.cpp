#include <iostream>

#include "fairaudit/audit.hpp"

int main(int argc, char** argv) {
  return fairaudit::run_main(argc, argv, std::cout, std::cerr);
}
