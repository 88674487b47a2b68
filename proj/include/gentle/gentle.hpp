#pragma once

#include "algebra.hpp"
#include "cluster.hpp"
#include "decompose.hpp"
#include "hom.hpp"
#include "io.hpp"
#include "laurent.hpp"
#include "linalg.hpp"
#include "poly.hpp"
#include "rep.hpp"
#include "schemes.hpp"
#include "surface.hpp"
#include "words.hpp"
