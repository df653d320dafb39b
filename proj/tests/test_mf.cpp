#include "doctest.h"
TEST_CASE("placeholder") { FAIL("not implemented yet"); }
