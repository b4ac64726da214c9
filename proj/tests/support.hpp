#pragma once

#include "gamebpa/parser.hpp"
#include "gamebpa/term.hpp"

#include <string>

namespace testsupport {

inline gamebpa::Term T(const std::string& src) { return gamebpa::parse_term(src); }

// The three running scenarios, in each viewer's encoding.
inline const char* kSubmittingOrderP = "start . write . (submit . store $ cancel)";
inline const char* kSubmittingOrderO = "start . write . (submit . store + cancel)";
inline const char* kSubmittingOrderDecl =
    "players P, O\n"
    "owner O: submit, cancel\n"
    "owner P: start, write, store\n";

inline const char* kTransactionP =
    "start . operate . (submit . store $ abort . rollback)";
inline const char* kTransactionDecl =
    "players P, O\n"
    "owner O: submit, abort\n"
    "owner P: start, operate, store, rollback\n";

inline const char* kPurchasingP =
    "start . shopping . (sTruck . oTruck . pOnLine $ sTrain . oTrain . pOnLine "
    "$ sPlane . oPlane . (pOnLine + pOffLine))";
inline const char* kPurchasingDecl =
    "players P, O\n"
    "owner O: sTruck, sTrain, sPlane\n"
    "owner P: start, shopping, oTruck, oTrain, oPlane, pOnLine, pOffLine\n";

// Strategy terms of the purchasing play (one strategy per player).
inline const char* kPurchasingStrategyP =
    "start . shopping . (sTruck . oTruck . pOnLine $ sTrain . oTrain . pOnLine "
    "$ sPlane . oPlane . pOffLine)";
inline const char* kPurchasingStrategyO =
    "start . shopping . sPlane . oPlane . (pOffLine $ pOnLine)";

// Extended three-player purchasing: view and strategy terms per player.
inline const char* kExtendedP1View =
    "start . shopping . (sTruck . oTruck . pOnLine + sTrain . oTrain . pOnLine "
    "+ sPlane . oPlane . (pOnLine $ pOffLine . (ByCheck $ ByBank)))";
inline const char* kExtendedDecl =
    "players P1, P2, P3\n"
    "owner P1: sTruck, sTrain, sPlane\n"
    "owner P2: pOnLine, pOffLine\n"
    "owner P3: ByCheck, ByBank\n"
    "owner P1: start, shopping, oTruck, oTrain, oPlane\n";
inline const char* kExtendedStrategyP1 =
    "start . shopping . sPlane . oPlane . (pOnLine $ pOffLine . (ByCheck $ ByBank))";
inline const char* kExtendedStrategyP2 =
    "start . shopping . (sTruck . oTruck . pOnLine $ sTrain . oTrain . pOnLine "
    "$ sPlane . oPlane . pOffLine . (ByCheck $ ByBank))";
inline const char* kExtendedStrategyP3 =
    "start . shopping . (sTruck . oTruck . pOnLine $ sTrain . oTrain . pOnLine "
    "$ sPlane . oPlane . (pOnLine $ pOffLine . ByBank))";

}  // namespace testsupport
