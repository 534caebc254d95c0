#include "nash_sens/driver.h"

int main(int argc, char** argv) { return nash_sens::CliMain(argc, argv); }
